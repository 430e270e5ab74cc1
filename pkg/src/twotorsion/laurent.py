"""Integral Laurent polynomials and the coprimality notions built on them.

Covers normalisation up to units ``±t^i``, symmetry, square roots, gcd-based
coprimality over Q, strong coprimality (``p(t^m)`` and ``q(t^n)`` coprime for
all nonzero m, n), and the admissibility test for polynomial tuples
``(0, δ², ..., δ², m²t² - (2m²+1)t + m²)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from . import _poly as P

__all__ = [
    "LaurentPoly",
    "PolyParseError",
    "PolyTuple",
    "StrongWitness",
    "CoprimeVerdict",
    "SquareRoot",
    "AdmissibilityReport",
    "lp_normalize",
    "lp_is_symmetric",
    "lp_square_root",
    "lp_coprime",
    "common_factor",
    "lp_strongly_coprime",
    "lp_strongly_coprime_bounded",
    "lp_nonunit_mod_every_prime",
    "tuple_admissible",
    "tuples_strongly_coprime",
    "em_polynomial",
    "ratio_family",
]


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column}: {text!r}")
        self.text = text
        self.column = column


class LaurentPoly:
    """Finite map exponent -> nonzero coefficient; immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            if v:
                v = Fraction(v)
                c[int(e)] = int(v) if v.denominator == 1 else v
        self._c = c

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_dense(cls, coeffs: Iterable, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def t(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return _Parser(text).parse()

    # -- accessors ------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    @property
    def span(self) -> int:
        return self.max_exp - self.min_exp if self._c else -1

    def dense(self) -> tuple:
        """Coefficients after shifting the lowest exponent to 0."""
        if not self._c:
            return ()
        lo = self.min_exp
        return tuple(self._c.get(lo + i, 0) for i in range(self.span + 1))

    def terms(self) -> int:
        return len(self._c)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, x):
        return sum(v * Fraction(x) ** e for e, v in self._c.items())

    def substitute_power(self, m: int) -> "LaurentPoly":
        """p(t^m)."""
        return LaurentPoly({e * m: v for e, v in self._c.items()})

    def inverted(self) -> "LaurentPoly":
        return self.substitute_power(-1)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sgn = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = f"{a}"
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sgn, body))
        first_sgn, first = parts[0]
        s = ("-" if first_sgn == "-" else "") + first
        for sgn, body in parts[1:]:
            s += f"{sgn}{body}"
        return s


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


# -- text syntax ----------------------------------------------------------------

class _Parser:
    """expr := term (('+'|'-') term)* ; term := factor ('*'? factor)*
    factor := INT | 't' ['^' ['-'] INT] | '(' expr ')' ['^' INT]"""

    def __init__(self, text: str):
        self.text = text
        self.s = text.replace("−", "-")
        self.i = 0

    def error(self, msg):
        raise PolyParseError(msg, self.text, self.i + 1)

    def peek(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> LaurentPoly:
        if not self.peek():
            self.error("empty polynomial")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self):
        sgn = 1
        if self.peek() in "+-":
            sgn = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        acc = self.term() * sgn
        while self.peek() in ("+", "-"):
            sgn = -1 if self.s[self.i] == "-" else 1
            self.i += 1
            acc = acc + self.term() * sgn
        return acc

    def term(self):
        acc = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                acc = acc * self.factor()
            elif c and (c.isdigit() or c in "t("):
                acc = acc * self.factor()
            else:
                return acc

    def integer(self, allow_sign=False):
        self.peek()
        start = self.i
        if allow_sign and self.i < len(self.s) and self.s[self.i] in "+-":
            self.i += 1
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        tok = self.s[start:self.i]
        if not tok or tok in "+-":
            self.i = start
            self.error("expected integer")
        return int(tok)

    def factor(self):
        c = self.peek()
        if c.isdigit():
            return LaurentPoly.const(self.integer())
        if c == "t":
            self.i += 1
            e = 1
            if self.peek() == "^":
                self.i += 1
                self.peek()
                if self.i < len(self.s) and self.s[self.i] == "(":
                    self.i += 1
                    e = self.integer(allow_sign=True)
                    if self.peek() != ")":
                        self.error("expected ')'")
                    self.i += 1
                else:
                    e = self.integer(allow_sign=True)
            return LaurentPoly.t(e)
        if c == "(":
            self.i += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            if self.peek() == "^":
                self.i += 1
                inner = inner ** self.integer()
            return inner
        self.error(f"unexpected {c!r}" if c else "unexpected end of input")


# -- normalisation and symmetry ------------------------------------------------

def lp_normalize(p: LaurentPoly) -> LaurentPoly:
    """Representative of the ±t^i orbit: lowest exponent 0, positive lead."""
    if p.is_zero():
        return p
    d = p.dense()
    if d[-1] < 0:
        d = tuple(-c for c in d)
    return LaurentPoly.from_dense(d)


def lp_is_symmetric(p: LaurentPoly) -> bool:
    if p.is_zero():
        raise ValueError("zero polynomial has no symmetry class")
    d = p.dense()
    r = tuple(reversed(d))
    return d == r or d == tuple(-c for c in r)


def em_polynomial(m: int) -> LaurentPoly:
    """m²t² − (2m²+1)t + m²."""
    return LaurentPoly({2: m * m, 1: -(2 * m * m + 1), 0: m * m})


def ratio_family(k: int) -> LaurentPoly:
    """(kt − (k+1))((k+1)t − k)."""
    return LaurentPoly({1: k, 0: -(k + 1)}) * LaurentPoly({1: k + 1, 0: -k})


# -- square roots ------------------------------------------------------------------

@dataclass(frozen=True)
class SquareRoot:
    delta: LaurentPoly
    at_one: int
    symmetric: bool


def lp_square_root(p: LaurentPoly) -> SquareRoot | None:
    if p.is_zero():
        return None
    q = lp_normalize(p).dense()
    n = len(q) - 1
    if n % 2:
        return None
    a = math.isqrt(q[-1])
    if a * a != q[-1]:
        return None
    h = n // 2
    # match coefficients from the top: delta = sum d_i t^i, d_h = a
    d = [Fraction(0)] * (h + 1)
    d[h] = Fraction(a)
    for k in range(1, h + 1):
        # coefficient of t^(2h-k) in delta^2
        s = sum(d[h - j] * d[h - k + j] for j in range(1, k))
        d[h - k] = (Fraction(q[n - k]) - s) / (2 * a)
    if any(c.denominator != 1 for c in d):
        return None
    delta = LaurentPoly.from_dense([int(c) for c in d])
    if lp_normalize(delta * delta) != LaurentPoly.from_dense(q):
        return None
    delta = lp_normalize(delta)
    return SquareRoot(delta, int(delta(1)), lp_is_symmetric(delta))


# -- coprimality -----------------------------------------------------------------------

def _require_nonzero(*ps: LaurentPoly):
    for p in ps:
        if p.is_zero():
            raise ValueError("zero polynomial not allowed")


def _gcd(p: LaurentPoly, q: LaurentPoly) -> tuple:
    return P.gcd_poly(p.dense(), q.dense())


def lp_coprime(p: LaurentPoly, q: LaurentPoly) -> bool:
    """gcd over Q (after clearing powers of t) is a unit."""
    _require_nonzero(p, q)
    return P.deg(_gcd(p, q)) == 0


def common_factor(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    g = P.primitive(_gcd(p, q))
    return LaurentPoly.from_dense(g)


@dataclass(frozen=True)
class StrongWitness:
    """Evidence that p and q are not strongly coprime.

    ``substitution`` is the pair ``(m, n)`` with ``gcd(p(t^m), q(t^n))``
    nontrivial. ``exponents`` is the reported witness ``(a, b)``: roots with
    ``alpha^a = beta^b``, which is the substitution pair swapped.
    """

    substitution: tuple[int, int]
    common_factor: LaurentPoly
    roots: tuple[Fraction, Fraction] | None = None

    @property
    def exponents(self) -> tuple[int, int]:
        m, n = self.substitution
        return n, m


@dataclass(frozen=True)
class CoprimeVerdict:
    verdict: str  # "yes" | "no" | "unsupported" | "unknown"
    witness: StrongWitness | None = None
    reason: str = ""

    def __str__(self):
        s = self.verdict
        if self.witness is not None:
            s += ","
            a, b = self.witness.exponents
            m, n = self.witness.substitution
            s += (f" witness (m,n)=({a},{b}): gcd(p(t^{m}), q(t^{n})) ="
                  f" {self.witness.common_factor}")
        return s


def _rational_roots(p: LaurentPoly) -> list[Fraction] | None:
    """Roots if p splits into linear factors over Q, else None."""
    d = P.primitive(p.dense())
    if len(d) == 1:
        return []
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(d))
    _, factors = sympy.factor_list(expr, x)
    roots = []
    for f, _mult in factors:
        cs = [int(c) for c in sympy.Poly(f, x).all_coeffs()]
        if len(cs) != 2:
            return None
        a, b = cs
        roots.append(Fraction(-b, a))
    return roots


def _exponent_vector(q: Fraction) -> dict[int, int]:
    v: dict[int, int] = {}
    for pr, e in sympy.factorint(abs(q.numerator)).items():
        v[int(pr)] = v.get(int(pr), 0) + int(e)
    for pr, e in sympy.factorint(q.denominator).items():
        v[int(pr)] = v.get(int(pr), 0) - int(e)
    return {k: e for k, e in v.items() if e}


def _phase_ok(m0: int, n0: int, a: int, b: int) -> bool:
    # exists psi: m0*psi = a*pi and n0*psi = b*pi (mod 2 pi)
    for j in range(abs(m0)):
        if (n0 * (a + 2 * j) - b * m0) % (2 * m0) == 0:
            return True
    return False


def _dependence(alpha: Fraction, beta: Fraction) -> tuple[int, int] | None:
    """Primitive (m, n), m > 0, n != 0, with some z: z^m = alpha, z^n = beta."""
    a, b = int(alpha < 0), int(beta < 0)
    u, v = _exponent_vector(alpha), _exponent_vector(beta)
    if not u and not v:
        for m0, n0 in ((1, 1), (2, 1), (1, 2), (1, -1)):
            if _phase_ok(m0, n0, a, b):
                return m0, n0
        return None
    if not u or not v or set(u) != set(v):
        return None
    ratios = {Fraction(v[p], u[p]) for p in u}
    if len(ratios) != 1:
        return None
    lam = ratios.pop()  # n / m
    m0, n0 = lam.denominator, lam.numerator
    if _phase_ok(m0, n0, a, b):
        return m0, n0
    return None


def _witness_factor(p: LaurentPoly, q: LaurentPoly, m: int, n: int) -> LaurentPoly | None:
    pm, qn = p.substitute_power(m), q.substitute_power(n)
    g = _gcd(pm, qn)
    if P.deg(g) >= 1:
        return LaurentPoly.from_dense(P.primitive(g))
    return None


def lp_strongly_coprime(p: LaurentPoly, q: LaurentPoly) -> CoprimeVerdict:
    """Exact decision for rational-rooted inputs.

    ``no`` comes with a witness whose gcd has been recomputed; ``unsupported``
    means an irrational root blocked the exact argument.
    """
    _require_nonzero(p, q)
    f = _witness_factor(p, q, 1, 1)
    if f is not None:
        return CoprimeVerdict("no", StrongWitness((1, 1), f), "common factor")
    rp, rq = _rational_roots(p), _rational_roots(q)
    if rp is None or rq is None:
        return CoprimeVerdict("unsupported", reason="irrational roots present")
    if 0 in rp or 0 in rq:
        raise AssertionError("Laurent normalisation leaves no zero roots")
    for alpha in rp:
        for beta in rq:
            dep = _dependence(alpha, beta)
            if dep is None:
                continue
            m, n = dep
            f = _witness_factor(p, q, m, n)
            if f is None:
                raise AssertionError(f"dependence {dep} for {alpha}, {beta} not confirmed by gcd")
            return CoprimeVerdict("no", StrongWitness((m, n), f, (alpha, beta)),
                                  f"({alpha})^{n} = ({beta})^{m}")
    return CoprimeVerdict("yes", reason="all root pairs multiplicatively independent")


def lp_strongly_coprime_bounded(p: LaurentPoly, q: LaurentPoly, bound: int) -> CoprimeVerdict:
    """Search gcd(p(t^m), q(t^n)) for 1 <= m <= bound, 1 <= |n| <= bound."""
    _require_nonzero(p, q)
    if bound < 1:
        raise ValueError("bound must be positive")
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            for nn in (n, -n):
                f = _witness_factor(p, q, m, nn)
                if f is not None:
                    return CoprimeVerdict("no", StrongWitness((m, nn), f), "bounded search hit")
    return CoprimeVerdict("unknown", reason=f"no common factor for exponents up to {bound}")


def lp_nonunit_mod_every_prime(delta: LaurentPoly) -> bool:
    """True iff delta mod d is neither zero nor a monomial, for every prime d.

    Modulo d the reduction is a monomial (or zero) exactly when d divides all
    coefficients but at most one, so only those primes need inspecting.
    """
    _require_nonzero(delta)
    cs = [int(c) for c in delta.coeffs.values()]
    if len(cs) < 2:
        return False
    for i in range(len(cs)):
        g = 0
        for j, c in enumerate(cs):
            if j != i:
                g = math.gcd(g, c)
        if g > 1:
            return False
    return True


# -- tuples ------------------------------------------------------------------------------

class PolyTuple(tuple):
    """(p_1, ..., p_n) with n >= 2."""

    def __new__(cls, entries: Sequence):
        items = tuple(e if isinstance(e, LaurentPoly) else
                      (LaurentPoly.parse(e) if isinstance(e, str) else _lift(e)) for e in entries)
        if len(items) < 2:
            raise ValueError("a polynomial tuple needs at least two entries")
        return super().__new__(cls, items)


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class AdmissibilityReport:
    clauses: tuple[Clause, ...]
    m: int | None

    @property
    def admissible(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.clauses if not c.passed]

    def __str__(self):
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "")
                 for c in self.clauses]
        verdict = f"admissible (m={self.m})" if self.admissible else "not admissible"
        return "\n".join(lines + [verdict])


def _em_parameter(p: LaurentPoly) -> int | None:
    if p.is_zero():
        return None
    d = lp_normalize(p).dense()
    if len(d) != 3:
        return None
    a0, a1, a2 = d
    m = math.isqrt(a2)
    if m == 0 or m * m != a2 or a0 != a2 or a1 != -(2 * a2 + 1):
        return None
    return m


def tuple_admissible(tup: Sequence, *, check_mod_primes: bool = False) -> AdmissibilityReport:
    tup = PolyTuple(tup)
    n = len(tup)
    clauses = [Clause("p1_zero", tup[0].is_zero(), str(tup[0]))]
    for k in range(2, n):
        p = tup[k - 1]
        root = lp_square_root(p)
        clauses.append(Clause(f"p{k}_square", root is not None,
                              f"delta = {root.delta}" if root else f"{p} is not a square"))
        if root is None:
            continue
        delta = root.delta
        clauses.append(Clause(f"p{k}_delta_symmetric", root.symmetric, str(delta)))
        clauses.append(Clause(f"p{k}_delta_at_one", abs(root.at_one) == 1, f"delta(1) = {root.at_one}"))
        clauses.append(Clause(f"p{k}_delta_nonunit", delta.terms() > 1 or delta.span > 0,
                              str(delta)))
        if check_mod_primes:
            clauses.append(Clause(f"p{k}_delta_nonunit_mod_primes",
                                  lp_nonunit_mod_every_prime(delta), str(delta)))
    m = _em_parameter(tup[-1])
    clauses.append(Clause("pn_em_form", m is not None,
                          f"m = {m}" if m is not None else f"{tup[-1]} is not m^2t^2-(2m^2+1)t+m^2"))
    return AdmissibilityReport(tuple(clauses), m)


def _pair_coprime(p: LaurentPoly, q: LaurentPoly) -> bool:
    # gcd(0, q) = q, a unit only when q is a nonzero monomial
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return not other.is_zero() and other.terms() == 1
    return lp_coprime(p, q)


def tuples_strongly_coprime(ptup: Sequence, qtup: Sequence) -> CoprimeVerdict:
    """Yes if (p_n, q_n) = 1 or some earlier pair is strongly coprime."""
    ptup, qtup = PolyTuple(ptup), PolyTuple(qtup)
    if len(ptup) != len(qtup):
        raise ValueError("tuples have different lengths")
    if _pair_coprime(ptup[-1], qtup[-1]):
        return CoprimeVerdict("yes", reason="last entries coprime")
    unsupported = False
    for k in range(len(ptup) - 1):
        p, q = ptup[k], qtup[k]
        if p.is_zero() or q.is_zero():
            if _pair_coprime(p, q):
                return CoprimeVerdict("yes", reason=f"entry {k + 1}: zero against a unit")
            continue
        v = lp_strongly_coprime(p, q)
        if v.verdict == "yes":
            return CoprimeVerdict("yes", reason=f"entries {k + 1} strongly coprime")
        if v.verdict == "unsupported":
            unsupported = True
    if unsupported:
        return CoprimeVerdict("unsupported", reason="some entry pair has irrational roots")
    return CoprimeVerdict("no", reason="no coprime slot")
