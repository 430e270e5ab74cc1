"""Real algebraic numbers with certified comparison.

An :class:`AlgebraicReal` is a squarefree integer polynomial together with an
open rational interval holding exactly one of its roots. Refinement is by
bisection; comparisons refine until the intervals separate, and equality is
decided exactly through a polynomial gcd.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import mpmath

from . import _poly as P

__all__ = [
    "AlgebraicReal",
    "alg_from_rational",
    "alg_cos_theta_m",
    "alg_cos_rational_angle",
    "alg_compare",
    "cyclotomic",
    "cos_minimal_polynomial",
    "chebyshev_preimages",
    "rational_between",
]

LESS, EQUAL, GREATER = -1, 0, 1

# bisection rounds tried before paying for the exact equality test
_CHEAP_ROUNDS = 12


class AlgebraicReal:
    """A real root of an integer polynomial, pinned by an isolating interval.

    ``poly`` is primitive with positive leading coefficient and squarefree.
    Values built from known-irreducible data (rationals, cosines of rational
    angles, Horn cosines) carry their minimal polynomial; Chebyshev preimages
    carry a squarefree defining polynomial instead (see :meth:`minimized`).
    """

    __slots__ = ("poly", "_lo", "_hi", "_sign_lo", "_lock", "refinements", "_key", "__weakref__")

    def __init__(self, poly: Iterable[int], lo, hi, *, check: bool = True):
        poly = P.primitive(tuple(poly))
        lo, hi = Fraction(lo), Fraction(hi)
        if P.deg(poly) < 1:
            raise ValueError("defining polynomial must have positive degree")
        if not lo < hi:
            raise ValueError("empty isolating interval")
        slo, shi = P.sign_at(poly, lo), P.sign_at(poly, hi)
        if slo == 0 or shi == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if check:
            sq = P.squarefree(poly)
            if sq != poly:
                raise ValueError("defining polynomial must be squarefree")
            if P.count_roots(P.sturm_sequence(poly), lo, hi) != 1:
                raise ValueError("interval does not isolate exactly one root")
        elif slo == shi:
            raise ValueError("no sign change across the isolating interval")
        self.poly = poly
        self._lo, self._hi = lo, hi
        self._sign_lo = slo
        self._lock = threading.Lock()
        self.refinements = [(lo, hi)]
        self._key = None

    # -- basic access -----------------------------------------------------
    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    @property
    def degree(self) -> int:
        return P.deg(self.poly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        b, a = self.poly
        return Fraction(-b, a)

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.rational)
        self.refine_to(Fraction(1, 2**60))
        lo, hi = self.interval
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({self.rational})"
        return f"AlgebraicReal(poly={self.poly}, ~{float(self):.12g})"

    # -- refinement -------------------------------------------------------
    def refine(self) -> None:
        """Halve the isolating interval (thread-safe, monotone)."""
        if self.is_rational:
            q = self.rational
            with self._lock:
                w = (self._hi - self._lo) / 4
                self._lo, self._hi = q - w, q + w
                self.refinements.append((self._lo, self._hi))
            return
        with self._lock:
            lo, hi = self._lo, self._hi
            mid = (lo + hi) / 2
            s = P.sign_at(self.poly, mid)
            if s == 0:
                # rational root of a squarefree poly: collapse to it
                w = (hi - lo) / 4
                den, num = mid.denominator, mid.numerator
                self.poly = (-num, den)
                self._sign_lo = -1
                self._key = None
                self._lo, self._hi = mid - w, mid + w
            elif s == self._sign_lo:
                self._lo = mid
            else:
                self._hi = mid
            self.refinements.append((self._lo, self._hi))

    def refine_to(self, width) -> None:
        while self._hi - self._lo > width:
            self.refine()

    # -- certified sign of a polynomial at this number ------------------------
    def sign_of(self, g: Iterable) -> int:
        """Exact sign of ``g(self)`` for a rational polynomial ``g``."""
        g = P.trim(tuple(g))
        if not g:
            return 0
        if self.is_rational:
            return P.sign_at(g, self.rational)
        h = P.gcd_poly(g, self.poly)
        if P.deg(h) >= 1:
            lo, hi = self.interval
            if P.sign_at(h, lo) * P.sign_at(h, hi) < 0:
                return 0
        while True:
            lo, hi = self.interval
            a, b = P.interval_eval(g, lo, hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self.refine()

    # -- canonical identity ---------------------------------------------------
    def key(self) -> tuple:
        """``(poly, root index)``: canonical for a fixed defining polynomial."""
        if self._key is None:
            if self.is_rational:
                self._key = (self.poly, 0)
            else:
                lo, _ = self.interval
                seq = P.sturm_sequence(self.poly)
                below = P.count_roots(seq, -P.cauchy_bound(self.poly), lo)
                self._key = (self.poly, below)
        return self._key

    def minimized(self) -> "AlgebraicReal":
        """Same number, defined by its minimal polynomial."""
        if self.is_rational:
            return self
        import sympy

        x = sympy.Symbol("x")
        expr = sum(int(c) * x**i for i, c in enumerate(self.poly))
        _, factors = sympy.factor_list(expr, x)
        lo, hi = self.interval
        for f, _mult in factors:
            coeffs = tuple(int(c) for c in reversed(sympy.Poly(f, x).all_coeffs()))
            if P.sign_at(coeffs, lo) * P.sign_at(coeffs, hi) < 0:
                if P.deg(coeffs) == 1:
                    return alg_from_rational(Fraction(-coeffs[0], coeffs[1]))
                return AlgebraicReal(coeffs, lo, hi, check=False)
        raise AssertionError("no factor changes sign across the isolating interval")

    def enclosure(self, dps: int = 50) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Outward-rounded mpmath enclosure of the value."""
        if self.is_rational:
            q = self.rational
            with mpmath.workdps(dps + 10):
                v = mpmath.mpf(q.numerator) / q.denominator
                pad = mpmath.mpf(10) ** (-(dps + 5)) * (1 + abs(v))
                return v - pad, v + pad
        self.refine_to(Fraction(1, 10 ** (dps + 2)))
        lo, hi = self.interval
        with mpmath.workdps(dps + 10):
            pad = mpmath.mpf(10) ** (-(dps + 5))
            a = mpmath.mpf(lo.numerator) / lo.denominator - pad
            b = mpmath.mpf(hi.numerator) / hi.denominator + pad
        return a, b

    def __eq__(self, other):
        if not isinstance(other, AlgebraicReal):
            if isinstance(other, (int, Fraction)):
                other = alg_from_rational(other)
            else:
                return NotImplemented
        return alg_compare(self, other) == EQUAL

    def __lt__(self, other):
        return alg_compare(self, _coerce(other)) == LESS

    def __le__(self, other):
        return alg_compare(self, _coerce(other)) != GREATER

    def __gt__(self, other):
        return alg_compare(self, _coerce(other)) == GREATER

    def __ge__(self, other):
        return alg_compare(self, _coerce(other)) != LESS

    __hash__ = None


def _coerce(x) -> AlgebraicReal:
    if isinstance(x, AlgebraicReal):
        return x
    return alg_from_rational(Fraction(x))


def alg_from_rational(q) -> AlgebraicReal:
    q = Fraction(q)
    if q.denominator == 1:
        lo, hi = q - 1, q + 1
    else:
        lo = Fraction(math.floor(q))
        hi = lo + 1
    return AlgebraicReal((-q.numerator, q.denominator), lo, hi, check=False)


def _is_cube(m: int) -> int | None:
    k = round(m ** (1 / 3))
    for c in (k - 1, k, k + 1):
        if c >= 0 and c**3 == m:
            return c
    return None


@lru_cache(maxsize=None)
def _cos_theta_m_cached(m: int) -> AlgebraicReal:
    k = _is_cube(m)
    if k is not None:
        return alg_from_rational(1 - Fraction(1, 2 * k))
    # 8m(1-x)^3 - 1, expanded low degree first
    poly = (8 * m - 1, -24 * m, 24 * m, -8 * m)
    return AlgebraicReal(poly, 0, 1, check=False)


def alg_cos_theta_m(m: int) -> AlgebraicReal:
    """The cosine ``(2 m^(1/3) - 1) / (2 m^(1/3))`` as the root of ``8m(1-x)^3 - 1``.

    Perfect cubes give rationals (m=1 -> 1/2, m=8 -> 3/4, ...).
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    src = _cos_theta_m_cached(int(m))
    return _copy(src)


def _copy(a: AlgebraicReal) -> AlgebraicReal:
    # cached values are shared; hand out independent refinement state
    lo, hi = a.interval
    out = AlgebraicReal(a.poly, lo, hi, check=False)
    out._key = a._key
    return out


# -- cyclotomic machinery ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            num, r = P.divmod_(num, cyclotomic(d))
            assert not r
    return tuple(int(c) for c in num)


def _palindromic_to_x(p: tuple) -> tuple:
    """For palindromic p of degree 2g return q with p(t) = t^g q(t + 1/t)."""
    n = P.deg(p)
    assert n % 2 == 0 and tuple(p) == tuple(reversed(p))
    g = n // 2
    # express sum c_k (t^k + t^-k) in x = t + 1/t using powers of x
    rest = [Fraction(c) for c in p]
    out: P.Poly = ()
    for k in range(g, -1, -1):
        c = rest[g + k]
        if c == 0:
            continue
        out = P.add(out, P.scale(P.power((0, 1), k), c))
        # subtract t^g * (t + 1/t)^k expanded
        for j in range(k + 1):
            rest[g + k - 2 * j] -= c * math.comb(k, j)
    assert all(v == 0 for v in rest)
    return out


@lru_cache(maxsize=None)
def cos_minimal_polynomial(n: int) -> tuple[int, ...]:
    """Minimal polynomial of cos(2 pi / n), primitive with positive lead."""
    if n == 1:
        return (-1, 1)
    if n == 2:
        return (1, 1)
    psi = _palindromic_to_x(cyclotomic(n))
    return P.primitive(P.compose(psi, (0, 2)))


@lru_cache(maxsize=4096)
def _cos_rational_cached(r: int, n: int) -> AlgebraicReal:
    poly = cos_minimal_polynomial(n)
    if P.deg(poly) == 1:
        return alg_from_rational(Fraction(-poly[0], poly[1]))
    with mpmath.workdps(40):
        vals = sorted(
            float(mpmath.cos(2 * mpmath.pi * k / n))
            for k in range(1, n // 2 + 1) if math.gcd(k, n) == 1
        )
        v = mpmath.cos(2 * mpmath.pi * r / n)
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    rad = Fraction(min(gaps) / 4).limit_denominator(10**12)
    centre = Fraction(str(mpmath.nstr(v, 30)))
    lo, hi = centre - rad, centre + rad
    # roots are exactly the cos(2 pi k / n), so a sign change certifies isolation
    if P.sign_at(poly, lo) * P.sign_at(poly, hi) >= 0:
        raise AssertionError("cosine isolation failed")
    return AlgebraicReal(poly, lo, hi, check=False)


def alg_cos_rational_angle(r: int, d: int) -> AlgebraicReal:
    """cos(2 pi r / d) with its minimal polynomial."""
    if d < 1:
        raise ValueError("d must be positive")
    r %= d
    g = math.gcd(r, d)
    r, n = r // g, d // g
    if 2 * r > n:
        r = n - r
    return _copy(_cos_rational_cached(r, n))


# -- comparison --------------------------------------------------------------

@lru_cache(maxsize=8192)
def _gcd_cached(p: tuple, q: tuple) -> tuple:
    return P.gcd_poly(p, q)


def _equal_by_gcd(x: AlgebraicReal, y: AlgebraicReal) -> bool:
    xlo, xhi = x.interval
    ylo, yhi = y.interval
    lo, hi = max(xlo, ylo), min(xhi, yhi)
    if not lo < hi:
        return False
    if x.poly == y.poly:
        g = x.poly
    else:
        a, b = (x.poly, y.poly) if x.poly <= y.poly else (y.poly, x.poly)
        g = _gcd_cached(a, b)
    if P.deg(g) < 1:
        return False
    # endpoints of the intersection are endpoints of x or y, hence not roots of g
    return P.count_roots(P.sturm_sequence(P.squarefree(g)), lo, hi) >= 1


def alg_compare(x: AlgebraicReal, y: AlgebraicReal) -> int:
    """Exact ordering: -1, 0 or 1."""
    if x is y:
        return EQUAL
    if x.is_rational and y.is_rational:
        a, b = x.rational, y.rational
        return (a > b) - (a < b)
    if x.is_rational:
        return -alg_compare(y, x)
    if y.is_rational:
        q = y.rational
        while True:
            lo, hi = x.interval
            if hi <= q:
                return LESS
            if lo >= q:
                return GREATER
            if P.sign_at(x.poly, q) == 0:
                return EQUAL
            x.refine()
    rounds = 0
    checked = False
    while True:
        xlo, xhi = x.interval
        ylo, yhi = y.interval
        if xhi <= ylo:
            return LESS
        if yhi <= xlo:
            return GREATER
        rounds += 1
        if rounds > _CHEAP_ROUNDS and not checked:
            if _equal_by_gcd(x, y):
                return EQUAL
            checked = True
        if xhi - xlo >= yhi - ylo:
            x.refine()
        else:
            y.refine()


def rational_between(x: AlgebraicReal, y: AlgebraicReal) -> Fraction:
    """A rational strictly between two distinct algebraic reals."""
    c = alg_compare(x, y)
    if c == EQUAL:
        raise ValueError("values are equal")
    a, b = (x, y) if c == LESS else (y, x)
    while True:
        ahi = a.rational if a.is_rational else a.interval[1]
        blo = b.rational if b.is_rational else b.interval[0]
        if ahi < blo:
            break
        if not a.is_rational:
            a.refine()
        if not b.is_rational:
            b.refine()
    return (ahi + blo) / 2


# -- Chebyshev preimages ---------------------------------------------------------

def chebyshev_preimages(c: AlgebraicReal, d: int) -> list[AlgebraicReal]:
    """All x in (-1, 1) with T_d(x) = c, sorted in decreasing order.

    Requires -1 < c < 1; there are exactly ``d`` of them (the cosines of the
    angles in (0, pi) that multiply to +-arccos c). The defining polynomial is
    the squarefree part of ``minpoly_c(T_d(x))``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if not (alg_compare(c, alg_from_rational(-1)) == GREATER
            and alg_compare(c, alg_from_rational(1)) == LESS):
        raise ValueError("c must lie strictly inside (-1, 1)")
    td = P.chebyshev_t(d)
    big = P.squarefree(P.compose(c.poly, td))
    intervals = P.isolate_real_roots(big, -1, 1)
    out = []
    for lo, hi in intervals:
        x = AlgebraicReal(big, lo, hi, check=False)
        if c.degree == 1 or _maps_onto(x, td, c):
            out.append(x)
    if len(out) != d:
        raise AssertionError(f"expected {d} preimages, found {len(out)}")
    out.reverse()
    return out


def _maps_onto(x: AlgebraicReal, td: tuple, c: AlgebraicReal) -> bool:
    # T_d(x) is some root of c.poly; decide whether it is c itself
    while True:
        lo, hi = x.interval
        a, b = P.interval_eval(td, lo, hi)
        clo, chi = c.interval
        if clo < a and b < chi:
            return True
        if b <= clo or a >= chi:
            return False
        x.refine()
        if (chi - clo) > (b - a):
            c.refine()
