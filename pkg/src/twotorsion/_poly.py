"""Dense univariate polynomials over Q.

Polynomials are tuples of :class:`fractions.Fraction` (or ``int``) coefficients,
lowest degree first, with no trailing zeros. The zero polynomial is ``()``.
Everything here is exact; this is the arithmetic kernel under
:mod:`twotorsion.exact_algebra` and :mod:`twotorsion.laurent`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Poly = tuple


def trim(coeffs: Iterable) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(p: Poly) -> int:
    return len(p) - 1


def lead(p: Poly):
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, a) -> Poly:
    if a == 0:
        return ()
    return tuple(a * c for c in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p: Poly, n: int) -> Poly:
    out: Poly = (1,)
    base = p
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    dq = deg(q)
    lq = Fraction(q[-1])
    if len(r) < len(q):
        return (), trim(r)
    quo = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - len(q), -1, -1):
        c = r[k + dq] / lq
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quo), trim(r[:dq])


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return ()
    lc = Fraction(p[-1])
    return tuple(Fraction(c) / lc for c in p)


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (``()`` only when both inputs are zero)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def primitive(p: Poly) -> Poly:
    """Integer primitive associate with positive leading coefficient."""
    p = trim(p)
    if not p:
        return ()
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def derivative(p: Poly) -> Poly:
    return trim(i * p[i] for i in range(1, len(p)))


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: Poly, x) -> int:
    return sign(evaluate(p, x))


def compose(p: Poly, q: Poly) -> Poly:
    """p(q(x))."""
    out: Poly = ()
    for c in reversed(p):
        out = add(mul(out, q), (c,) if c else ())
    return out


def squarefree(p: Poly) -> Poly:
    g = gcd_poly(p, derivative(p))
    if deg(g) <= 0:
        return primitive(p)
    return primitive(divmod_(p, g)[0])


def interval_eval(p: Poly, lo, hi) -> tuple:
    """Rigorous enclosure of ``p`` over ``[lo, hi]`` by interval Horner."""
    a = b = Fraction(0)
    for c in reversed(p):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


@lru_cache(maxsize=None)
def chebyshev_t(n: int) -> Poly:
    """Chebyshev polynomial T_n with cos(n x) = T_n(cos x)."""
    if n == 0:
        return (1,)
    t0, t1 = (1,), (0, 1)
    for _ in range(n - 1):
        t0, t1 = t1, sub(mul((0, 2), t1), t0)
    return t1


def cauchy_bound(p: Poly) -> Fraction:
    lc = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lc for c in p[:-1]), default=Fraction(0))


# -- Sturm sequences ---------------------------------------------------------

def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    """Sturm chain of a squarefree polynomial, each member made primitive."""
    p = primitive(p)
    seq = [p, primitive(derivative(p))]
    while deg(seq[-1]) > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        # keep sign of -r, scale by positive content only
        pr = primitive(r)
        if sign(r[-1]) > 0:
            pr = neg(pr)
        seq.append(pr)
    return tuple(seq)


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sign_variations_at(seq: Sequence[Poly], x) -> int:
    return _variations([sign_at(q, x) for q in seq])


def count_roots(seq: Sequence[Poly], lo, hi) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    return sign_variations_at(seq, lo) - sign_variations_at(seq, hi)


def isolate_real_roots(p: Poly, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open isolating intervals for the real roots of ``p`` in ``(lo, hi)``.

    Endpoints are never roots. Intervals come back sorted.
    """
    sq = squarefree(p)
    if deg(sq) < 1:
        return []
    seq = sturm_sequence(sq)
    bound = cauchy_bound(sq)
    lo = Fraction(-bound if lo is None else lo)
    hi = Fraction(bound if hi is None else hi)
    out: list[tuple[Fraction, Fraction]] = []
    _isolate(sq, seq, lo, hi, out)
    out.sort()
    return out


def _isolate(p, seq, lo, hi, out):
    # roots in the open interval (lo, hi); endpoint roots are excluded
    n = count_roots(seq, lo, hi) - (1 if evaluate(p, hi) == 0 else 0)
    if n == 0:
        return
    if n == 1 and evaluate(p, lo) != 0 and evaluate(p, hi) != 0:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if evaluate(p, mid) == 0:
        w = (hi - lo) / 8
        while count_roots(seq, mid - w, mid + w) != 1 or evaluate(p, mid - w) == 0 \
                or evaluate(p, mid + w) == 0:
            w /= 2
        out.append((mid - w, mid + w))
        _isolate(p, seq, lo, mid - w, out)
        _isolate(p, seq, mid + w, hi, out)
        return
    _isolate(p, seq, lo, mid, out)
    _isolate(p, seq, mid, hi, out)
