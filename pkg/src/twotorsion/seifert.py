"""Seifert matrices and their classical invariants.

Signatures are computed exactly: the Hermitian form
``(1 - w) A + (1 - conj w) A^T`` at ``w = cos t + i sin t`` has a characteristic
polynomial whose coefficients are rational polynomials in ``cos t`` alone
(odd powers of ``sin t`` cancel). Those coefficients get certified signs at the
algebraic number ``cos t``, and since every root is real, Descartes' rule
counts positive and negative eigenvalues exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from . import _poly as P
from . import exact_algebra as ea
from .laurent import LaurentPoly, lp_is_symmetric, lp_normalize
from .stepfn import AVERAGE, STRICT, Angle, JumpCollision, StepFunction, sf_evaluate

__all__ = [
    "SeifertMatrix",
    "InvalidSeifertMatrix",
    "ArfMismatch",
    "validate",
    "alexander",
    "arf",
    "arf_murasugi",
    "arf_symplectic",
    "signature_at",
    "signature_function",
    "jump_angles",
    "to_spectral",
    "realize_from_alexander",
    "seifert_Em",
    "seifert_61",
    "seifert_trefoil",
    "CatalogEntry",
    "catalog",
]


class InvalidSeifertMatrix(ValueError):
    pass


class ArfMismatch(AssertionError):
    pass


class SeifertMatrix:
    """Immutable square integer matrix."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidSeifertMatrix("matrix is not square")
        self.entries = rows

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(list(zip(*self.entries)))

    def __neg__(self) -> "SeifertMatrix":
        return SeifertMatrix([[-x for x in r] for r in self.entries])

    def mirror(self) -> "SeifertMatrix":
        return -self.transpose()

    def direct_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        a, b = self.size, other.size
        rows = [list(r) + [0] * b for r in self.entries]
        rows += [[0] * a + list(r) for r in other.entries]
        return SeifertMatrix(rows)

    def sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SeifertMatrix({self.tolist()})"


def _as_matrix(A) -> SeifertMatrix:
    return A if isinstance(A, SeifertMatrix) else SeifertMatrix(A)


def validate(A) -> bool:
    """Even size and ``det(A - A^T) = 1``."""
    try:
        A = _as_matrix(A)
    except InvalidSeifertMatrix:
        return False
    if A.size == 0 or A.size % 2:
        return False
    M = A.sympy()
    return (M - M.T).det() == 1


def _require_valid(A) -> SeifertMatrix:
    A = _as_matrix(A)
    if not validate(A):
        raise InvalidSeifertMatrix(f"not a Seifert matrix (need even size and det(A - A^T) = 1): {A.tolist()}")
    return A


_t = sympy.Symbol("t")
_c = sympy.Symbol("c")
_s = sympy.Symbol("s")
_lam = sympy.Symbol("lam")


@lru_cache(maxsize=512)
def _alexander_cached(A: SeifertMatrix) -> LaurentPoly:
    M = A.sympy()
    det = sympy.expand((M - _t * M.T).det(method="berkowitz"))
    poly = sympy.Poly(det, _t)
    coeffs = {int(e[0]): int(c) for e, c in zip(poly.monoms(), poly.coeffs())}
    return lp_normalize(LaurentPoly(coeffs))


def alexander(A) -> LaurentPoly:
    """``det(A - t A^T)`` normalised to lowest exponent 0 and positive lead."""
    return _alexander_cached(_require_valid(A))


# -- Arf invariant --------------------------------------------------------------------

def arf_murasugi(A) -> int:
    """0 iff ``Delta(-1) = +-1 mod 8``."""
    v = int(alexander(A)(-1)) % 8
    if v in (1, 7):
        return 0
    if v in (3, 5):
        return 1
    raise AssertionError(f"Delta(-1) = {v} mod 8 is even; not a knot")


def arf_symplectic(A) -> int:
    """Arf of ``q(x) = x^T A x mod 2`` via a symplectic basis of ``A + A^T mod 2``."""
    A = _require_valid(A)
    n = A.size
    E = A.entries

    def q(x):
        return sum(x[i] * E[i][j] * x[j] for i in range(n) for j in range(n)) % 2

    def b(x, y):
        return sum(x[i] * (E[i][j] + E[j][i]) * y[j] for i in range(n) for j in range(n)) % 2

    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    total = 0
    while basis:
        e = basis.pop(0)
        k = next((i for i, f in enumerate(basis) if b(e, f)), None)
        if k is None:
            raise AssertionError("form is degenerate mod 2")
        f = basis.pop(k)
        total += q(e) * q(f)
        # project the rest onto the orthogonal complement of span(e, f)
        new = []
        for v in basis:
            be, bf = b(v, e), b(v, f)
            w = tuple((v[i] + bf * e[i] + be * f[i]) % 2 for i in range(n))
            new.append(w)
        basis = new
    return total % 2


def arf(A) -> int:
    a, b = arf_murasugi(A), arf_symplectic(A)
    if a != b:
        raise ArfMismatch(f"Murasugi gives {a}, symplectic basis gives {b} for {_as_matrix(A).tolist()}")
    return a


# -- signatures --------------------------------------------------------------------------

@lru_cache(maxsize=512)
def _charpoly_in_cos(A: SeifertMatrix) -> tuple:
    """Coefficients (low degree first in lambda) as rational polynomials in cos."""
    M = A.sympy()
    H = (1 - _c) * (M + M.T) + sympy.I * _s * (M.T - M)
    cp = sympy.expand(H.charpoly(_lam).as_expr())
    out = []
    poly = sympy.Poly(cp, _lam)
    n = A.size
    for k in range(n + 1):
        coeff = sympy.expand(poly.coeff_monomial(_lam**k))
        cs = sympy.Poly(coeff, _s, _c)
        acc = sympy.Integer(0)
        for (ps, pc), v in zip(cs.monoms(), cs.coeffs()):
            if ps % 2:
                if sympy.simplify(v) != 0:
                    raise AssertionError("odd power of sin survived")
                continue
            acc += v * _c**pc * (1 - _c**2) ** (ps // 2)
        acc = sympy.expand(acc)
        if acc.has(sympy.I):
            raise AssertionError("non-real characteristic coefficient")
        if acc == 0:
            out.append(())
            continue
        pc_ = sympy.Poly(acc, _c)
        dense = [Fraction(0)] * (pc_.degree() + 1)
        for (e,), v in zip(pc_.monoms(), pc_.coeffs()):
            dense[e] = Fraction(int(sympy.numer(v)), int(sympy.denom(v)))
        out.append(P.trim(dense))
    return tuple(out)


def _variations(signs) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signature_at_cos(A: SeifertMatrix, c: ea.AlgebraicReal) -> int | None:
    """Signature at the angle with cosine c; None when the form is degenerate."""
    coeffs = _charpoly_in_cos(A)
    signs = [c.sign_of(g) for g in coeffs]
    if signs[0] == 0:
        return None
    pos = _variations(signs)
    neg = _variations([s * (-1) ** k for k, s in enumerate(signs)])
    return pos - neg


def signature_at(A, angle: Angle, convention: str = STRICT):
    """Levine-Tristram signature at ``e^{i angle}``."""
    A = _require_valid(A)
    if convention not in (STRICT, AVERAGE):
        raise ValueError(f"unknown convention {convention!r}")
    if angle.form.is_rational and angle.form.const == 0:
        return 0
    v = _signature_at_cos(A, angle.cos)
    if v is not None:
        return v
    if convention == STRICT:
        raise JumpCollision(f"angle {angle!r} is a root of the Alexander polynomial")
    return sf_evaluate(signature_function(A), angle, AVERAGE)


def _cos_poly_roots(delta: LaurentPoly) -> list[ea.AlgebraicReal]:
    d = delta.dense()
    if tuple(d) != tuple(reversed(d)):
        d = tuple(-x for x in d)
    h = ea._palindromic_to_x(tuple(d))
    # cos = x/2, so the cosine is a root of h(2y)
    hy = P.squarefree(P.compose(h, (0, 2)))
    if P.deg(hy) < 1:
        return []
    out = []
    for lo, hi in P.isolate_real_roots(hy, -1, 1):
        out.append(ea.AlgebraicReal(hy, lo, hi, check=False))
    return out


def jump_angles(A) -> list[Angle]:
    """Unit-circle roots of the Alexander polynomial, as angles in (0, pi), ascending."""
    A = _require_valid(A)
    roots = _cos_poly_roots(alexander(A))
    return [Angle.from_cos(c) for c in reversed(roots)]


@lru_cache(maxsize=256)
def _signature_function_cached(A: SeifertMatrix) -> StepFunction:
    cosines = list(reversed(_cos_poly_roots(alexander(A))))  # decreasing cos = increasing angle
    if not cosines:
        return StepFunction()
    samples = []
    for a, b in zip(cosines, cosines[1:]):
        samples.append(ea.alg_from_rational(ea.rational_between(a, b)))
    samples.append(ea.alg_from_rational(-1))
    first = ea.alg_from_rational(ea.rational_between(ea.alg_from_rational(1), cosines[0]))
    if _signature_at_cos(A, first) != 0:
        raise AssertionError("signature near 1 is not zero")
    jumps = []
    for c, smp in zip(cosines, samples):
        v = _signature_at_cos(A, smp)
        if v is None:
            raise AssertionError("sample point fell on a root")
        jumps.append((Angle.from_cos(c), v))
    return StepFunction(jumps, _trusted=True)


def signature_function(A) -> StepFunction:
    return _signature_function_cached(_require_valid(A))


def to_spectral(A, name: str = ""):
    """SpectralKnot carrying the signature function and Arf bit of A."""
    from .knotcalc import MatrixKnot

    return MatrixKnot(_require_valid(A), name=name).spectral()


# -- realisation -----------------------------------------------------------------------------

def _hankel_symmetrizer(g: Sequence[int]) -> list[list[int]]:
    # g monic, low degree first: a_0..a_{n-1}, 1
    n = len(g) - 1
    a = list(g)
    return [[a[i + j + 1] if i + j + 1 <= n else 0 for j in range(n)] for i in range(n)]


def _companion(g: Sequence[int]) -> list[list[int]]:
    n = len(g) - 1
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -g[i]
    return C


def realize_from_alexander(p: LaurentPoly) -> SeifertMatrix:
    """A Seifert matrix whose Alexander polynomial is p up to units."""
    if p.is_zero() or not lp_is_symmetric(p) or abs(p(1)) != 1:
        raise ValueError("need a symmetric polynomial with p(1) = +-1")
    target = lp_normalize(p)
    d = target.dense()
    if len(d) % 2 == 0:
        raise ValueError("symmetric polynomial of odd span is not an Alexander polynomial")
    if len(d) == 1:
        raise ValueError("the unit polynomial needs no Seifert surface")
    if len(d) == 3:
        a, b = d[0], d[1]
        prod = -a if b == -(2 * a + 1) else (a if b == -(2 * a - 1) else None)
        if prod is not None:
            x = max(k for k in range(1, math.isqrt(a) + 1) if a % k == 0)
            A = SeifertMatrix([[x, 1], [0, prod // x]])
            if alexander(A) == target:
                return A
    # t^n h(t + 1/t) = Delta with h(2) = 1 after a sign; f(s) = h(s + 2)
    if d != tuple(reversed(d)):
        d = tuple(-x for x in d)
    h = ea._palindromic_to_x(tuple(d))
    f = [int(c) for c in P.compose(h, (2, 1))]
    if f[0] == -1:
        f = [-c for c in f]
    n = len(f) - 1
    lead = f[-1]
    g = list(reversed(f))  # u^n f(1/u): monic because f(0) = 1
    assert g[-1] == 1
    C = sympy.Matrix(_companion(g))
    B = sympy.Matrix(_hankel_symmetrizer(g))
    # C B is symmetric, so P = -C B and Q = B^-1 are symmetric with P Q = -C
    Pm = -C * B
    Q = B.inv()
    if not (Pm.is_symmetric() and Q.is_symmetric()) or any(x.q != 1 for x in Q):
        raise AssertionError("symmetrizer construction failed")
    rows = [[int(Pm[i, j]) for j in range(n)] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [[0] * n + [int(Q[i, j]) for j in range(n)] for i in range(n)]
    A = SeifertMatrix(rows)
    if alexander(A) != target:
        raise AssertionError(f"round trip failed for {p} (lead {lead})")
    return A


# -- catalog ------------------------------------------------------------------------------------

def seifert_Em(m: int) -> SeifertMatrix:
    """Genus one model with Alexander polynomial ``m^2 t^2 - (2m^2+1) t + m^2``."""
    if m == 0:
        raise ValueError("m must be nonzero")
    return SeifertMatrix([[m, 1], [0, -m]])


def seifert_61() -> SeifertMatrix:
    """Genus one ribbon model with Alexander polynomial ``2t^2 - 5t + 2``."""
    return SeifertMatrix([[1, 1], [0, -2]])


def seifert_trefoil() -> SeifertMatrix:
    return SeifertMatrix([[-1, 1], [0, -1]])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: SeifertMatrix
    crossings: int | None = None
    citation: str = ""


def catalog(max_m: int = 3) -> dict[str, CatalogEntry]:
    out = {}
    for m in range(1, max_m + 1):
        out[f"E_{m}"] = CatalogEntry(f"E_{m}", seifert_Em(m))
    e1 = seifert_Em(1)
    out["K"] = CatalogEntry("K", e1.direct_sum(e1), 16,
                            "seed E_1 # E_1: crossing number at most 16 (diagram count)")
    out["K^k"] = CatalogEntry("K^k", seifert_61(), 12,
                              "ribbon seed with Alexander module Z[t^+-1]/<2t-5+2/t>: crossing number at most 12")
    out["trefoil"] = CatalogEntry("trefoil", seifert_trefoil(), 3, "standard trefoil")
    return out
