"""Horn knots, their jump angles, and what cabling does to a signature bump."""
from fractions import Fraction

from twotorsion import knotcalc as kc
from twotorsion.exact_algebra import alg_cos_theta_m
from twotorsion.stepfn import STRICT, Angle, sf_average, sf_evaluate, sf_support

# jump cosines: rational exactly when m is a cube
for m in (1, 2, 8, 27, 64, 100):
    c = alg_cos_theta_m(m)
    print(f"m={m:>3}  cos theta_m = {c.rational if c.is_rational else float(c)}")

P1, P8 = kc.horn_knot(1), kc.horn_knot(8)
S = kc.connected_sum(kc.mirror(P1), P8)   # 2 on (theta_8, theta_1), 0 elsewhere
print(S.name, S.sigma)
print("support:", [(a.turn_text(10), b.turn_text(10)) for a, b in sf_support(S.sigma)])

cab = kc.cable_d1(S, 7)                   # sigma(w) -> sigma(w^7)
print("arcs after 7-fold pullback:", len(sf_support(cab.sigma)))

Jp = kc.connected_sum(S, kc.mirror(cab))
for r in range(1, 7):
    v = sf_evaluate(Jp.sigma, Angle.from_turn(Fraction(r, 7)), STRICT)
    print(f"J'(e^(2 pi i {r}/7)) = {v}")

# the circle average cancels symbolically, no numerics involved
print("average of J' is exactly zero:", sf_average(Jp.sigma).is_exact_zero)
