"""Strong coprimality on a few polynomial pairs."""
from twotorsion.laurent import (
    LaurentPoly,
    em_polynomial,
    ratio_family,
    lp_strongly_coprime,
    lp_strongly_coprime_bounded,
    tuple_admissible,
)

L = LaurentPoly.parse

print(ratio_family(1), "|", ratio_family(2), "->", lp_strongly_coprime(ratio_family(1), ratio_family(2)))

p, q = L("(t-2)*(2t-1)"), L("(t-4)*(4t-1)")
v = lp_strongly_coprime(p, q)
print(p, "|", q, "->", v)
print("  roots", v.witness.roots, "exponents", v.witness.exponents)

# irrational roots: exact test declines, bounded search takes over
a, b = em_polynomial(1), L("t^2-7t+1")
print(a, "|", b, "->", lp_strongly_coprime(a, b), "/ bounded:", lp_strongly_coprime_bounded(a, b, 6))

rep = tuple_admissible((0, L("(t^2-t+1)^2"), em_polynomial(3)))
print("admissible:", rep.admissible, "m =", rep.m)
for c in rep.clauses:
    print(f"  {c.name:24} {'ok' if c.passed else 'FAILED'}  {c.detail}")
