"""Integer step functions on the unit circle with exactly located jumps.

A signature function is conjugation symmetric, so only the upper half circle
``[0, pi]`` is stored. Angles are kept as exact linear forms

    angle / pi = q + sum_k c_k * arccos(b_k) / pi

with rational ``q``, ``c_k`` and algebraic cosines ``b_k``. Pulling back by
``omega -> omega^d`` maps such forms to such forms, so cables never leave the
representation, and averages are again forms that can cancel symbolically.
"""
from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from . import exact_algebra as ea
from .exact_algebra import AlgebraicReal

__all__ = [
    "STRICT",
    "AVERAGE",
    "JumpCollision",
    "PiForm",
    "Angle",
    "StepFunction",
    "angle_compare",
    "sf_add",
    "sf_negate",
    "sf_scale",
    "sf_pullback_power",
    "sf_evaluate",
    "sf_average",
    "sf_sum_over_dth_roots",
    "sf_support",
    "sf_supports_disjoint",
    "sf_to_csv",
    "sf_to_svg",
    "bump",
]

STRICT = "off_jump_strict"
AVERAGE = "average_at_jump"

_DPS = 50
_lock = threading.RLock()
_BASES: dict[tuple, AlgebraicReal] = {}
_BASE_ENC: dict[tuple, tuple] = {}


class JumpCollision(ValueError):
    """An evaluation point coincides with a jump."""

    def __init__(self, message: str, r: int | None = None, d: int | None = None):
        super().__init__(message)
        self.r = r
        self.d = d


def _register(c: AlgebraicReal) -> tuple:
    key = c.key()
    with _lock:
        _BASES.setdefault(key, c)
    return key


def _base_enclosure(key) -> tuple:
    # enclosure of arccos(b)/pi
    with _lock:
        enc = _BASE_ENC.get(key)
        if enc is None:
            lo, hi = _BASES[key].enclosure(_DPS)
            with mpmath.workdps(_DPS + 15):
                pad = mpmath.mpf(10) ** (-(_DPS - 5))
                a = mpmath.acos(min(hi, mpmath.mpf(1))) / mpmath.pi - pad
                b = mpmath.acos(max(lo, mpmath.mpf(-1))) / mpmath.pi + pad
            enc = (a, b)
            _BASE_ENC[key] = enc
        return enc


@dataclass(frozen=True)
class PiForm:
    """``const + sum(coef * arccos(base)/pi)``; terms sorted, coefficients nonzero."""

    const: Fraction = Fraction(0)
    terms: tuple = ()

    @staticmethod
    def _make(const, acc: dict) -> "PiForm":
        return PiForm(Fraction(const), tuple(sorted((k, v) for k, v in acc.items() if v)))

    def __add__(self, other: "PiForm") -> "PiForm":
        acc = dict(self.terms)
        for k, v in other.terms:
            acc[k] = acc.get(k, 0) + v
        return PiForm._make(self.const + other.const, acc)

    def __neg__(self) -> "PiForm":
        return PiForm(-self.const, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "PiForm") -> "PiForm":
        return self + (-other)

    def scale(self, q) -> "PiForm":
        q = Fraction(q)
        if q == 0:
            return PiForm()
        return PiForm(self.const * q, tuple((k, v * q) for k, v in self.terms))

    def shift(self, q) -> "PiForm":
        return PiForm(self.const + Fraction(q), self.terms)

    @property
    def is_rational(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return self.const == 0 and not self.terms

    def enclosure(self) -> tuple:
        with mpmath.workdps(_DPS + 15):
            c = mpmath.mpf(self.const.numerator) / self.const.denominator
            lo = hi = c
            for k, v in self.terms:
                a, b = _base_enclosure(k)
                fv = mpmath.mpf(v.numerator) / v.denominator
                x, y = fv * a, fv * b
                lo += min(x, y)
                hi += max(x, y)
            pad = mpmath.mpf(10) ** (-(_DPS - 8))
            return lo - pad, hi + pad

    def __float__(self):
        lo, hi = self.enclosure()
        return float((lo + hi) / 2)

    def __str__(self):
        parts = []
        if self.const or not self.terms:
            parts.append(str(self.const))
        for k, v in self.terms:
            b = _BASES.get(k)
            parts.append(f"{v}*acos({float(b):.6g})/pi" if b is not None else f"{v}*acos{k}/pi")
        return " + ".join(parts)


class Angle:
    """A point of ``[0, pi]`` (the conjugation-reduced upper half circle)."""

    __slots__ = ("form", "_cos", "_thunk", "_enc", "_pre", "__weakref__")

    def __init__(self, form: PiForm, cos: AlgebraicReal | None = None, thunk=None):
        if form.is_rational and not (0 <= form.const <= 1):
            raise ValueError("rational angle must lie in [0, pi]")
        self.form = form
        self._cos = cos
        self._thunk = thunk
        self._enc = None
        self._pre: dict[int, list] = {}

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_turn(cls, t) -> "Angle":
        """Angle ``2 pi t`` reduced by conjugation into ``[0, pi]``."""
        t = Fraction(t) % 1
        if t > Fraction(1, 2):
            t = 1 - t
        return cls(PiForm(2 * t))

    @classmethod
    def pi(cls) -> "Angle":
        return cls(PiForm(Fraction(1)))

    @classmethod
    def zero(cls) -> "Angle":
        return cls(PiForm(Fraction(0)))

    @classmethod
    def from_cos(cls, c) -> "Angle":
        """The angle in ``[0, pi]`` whose cosine is ``c``; rational angles are detected."""
        c = ea._coerce(c)
        if ea.alg_compare(c, ea.alg_from_rational(1)) == ea.GREATER or \
                ea.alg_compare(c, ea.alg_from_rational(-1)) == ea.LESS:
            raise ValueError("cosine outside [-1, 1]")
        t = _rational_turn_of_cos(c)
        if t is not None:
            return cls.from_turn(t)
        c = c.minimized()
        t = _rational_turn_of_cos(c)
        if t is not None:
            return cls.from_turn(t)
        key = _register(c)
        return cls(PiForm(Fraction(0), ((key, Fraction(1)),)), cos=c)

    # -- accessors -------------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.form.is_rational

    @property
    def turn(self) -> Fraction | None:
        """``angle / 2pi`` when rational."""
        return self.form.const / 2 if self.form.is_rational else None

    @property
    def cos(self) -> AlgebraicReal:
        with _lock:
            if self._cos is None:
                if self.form.is_rational:
                    t = self.turn
                    self._cos = ea.alg_cos_rational_angle(t.numerator, t.denominator)
                elif self._thunk is not None:
                    self._cos = self._thunk()
                    self._thunk = None
                else:
                    raise AssertionError("angle without a cosine route")
            return self._cos

    def enclosure(self) -> tuple:
        """Enclosure of ``angle / pi``."""
        if self._enc is None:
            self._enc = self.form.enclosure()
        return self._enc

    def radians(self) -> float:
        return float(self.form) * float(mpmath.pi)

    def __float__(self):
        return self.radians()

    def turn_text(self, digits: int = 30) -> str:
        if self.is_rational:
            return str(self.turn)
        lo, hi = self.enclosure()
        with mpmath.workdps(digits + 10):
            return "~" + mpmath.nstr((lo + hi) / 4, digits, strip_zeros=False)

    def __repr__(self):
        if self.is_rational:
            return f"Angle(turn={self.turn})"
        return f"Angle({self.form})"

    # -- comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Angle):
            return NotImplemented
        return angle_compare(self, other) == 0

    def __lt__(self, other):
        return angle_compare(self, other) < 0

    def __le__(self, other):
        return angle_compare(self, other) <= 0

    def __gt__(self, other):
        return angle_compare(self, other) > 0

    def __ge__(self, other):
        return angle_compare(self, other) >= 0

    __hash__ = None

    # -- multiple angle preimages -----------------------------------------------
    def preimages(self, d: int) -> list["Angle"]:
        """All phi in (0, pi) with d*phi = +-self (mod 2pi), ascending.

        Entry ``j`` is ``(j + L)/d`` for even ``j`` and ``(j + 1 - L)/d`` for
        odd ``j`` (in units of pi, ``L = self/pi``); the sign ``+1`` or ``-1``
        of the relation is returned alongside.
        """
        if d < 1:
            raise ValueError("d must be positive")
        with _lock:
            if d in self._pre:
                return self._pre[d]
        L = self.form
        out = []
        cos_list: list = []

        def cos_of(j):
            def thunk():
                with _lock:
                    if not cos_list:
                        cos_list.extend(ea.chebyshev_preimages(self.cos, d))
                    return cos_list[j]
            return thunk

        for j in range(d):
            if j % 2 == 0:
                f = L.shift(j).scale(Fraction(1, d))
            else:
                f = (-L).shift(j + 1).scale(Fraction(1, d))
            out.append(Angle(f, thunk=None if f.is_rational else cos_of(j)))
        with _lock:
            self._pre[d] = out
        return out


def _rational_turn_of_cos(c: AlgebraicReal) -> Fraction | None:
    if c.is_rational:
        q = c.rational
        table = {Fraction(1): Fraction(0), Fraction(1, 2): Fraction(1, 6), Fraction(0): Fraction(1, 4),
                 Fraction(-1, 2): Fraction(1, 3), Fraction(-1): Fraction(1, 2)}
        return table.get(q)
    deg = c.degree
    from sympy import totient

    # cos(2 pi r/n) has degree phi(n)/2; phi(n) <= 2*deg forces n <= bound below
    for n in range(3, 6 * deg * deg + 7):
        if int(totient(n)) != 2 * deg:
            continue
        if ea.cos_minimal_polynomial(n) != c.poly:
            continue
        for r in range(1, n // 2 + 1):
            if math.gcd(r, n) == 1 and ea.alg_compare(ea.alg_cos_rational_angle(r, n), c) == ea.EQUAL:
                return Fraction(r, n)
    return None


def angle_compare(a: Angle, b: Angle) -> int:
    if a is b or a.form == b.form:
        return 0
    if a.form.is_rational and b.form.is_rational:
        x, y = a.form.const, b.form.const
        return (x > y) - (x < y)
    alo, ahi = a.enclosure()
    blo, bhi = b.enclosure()
    if ahi < blo:
        return -1
    if bhi < alo:
        return 1
    # cosine is decreasing on [0, pi]
    return -ea.alg_compare(a.cos, b.cos)


_KEY = functools.cmp_to_key(angle_compare)


# -- step functions ----------------------------------------------------------------

class StepFunction:
    """Value 0 near angle 0, changing by ``delta`` at each jump in (0, pi)."""

    __slots__ = ("_angles", "_values")

    def __init__(self, jumps: Iterable[tuple[Angle, int]] = (), *, _trusted: bool = False):
        jumps = list(jumps)
        if not _trusted:
            for a, _ in jumps:
                if a.form.is_rational and a.form.const in (0, 1):
                    raise ValueError("jumps must lie strictly inside (0, pi)")
            jumps.sort(key=lambda jv: _KEY(jv[0]))
            for (a, _), (b, _) in zip(jumps, jumps[1:]):
                if angle_compare(a, b) == 0:
                    raise ValueError("duplicate jump angle")
        angles, values = [], []
        prev = 0
        for a, v in jumps:
            if v != prev:
                angles.append(a)
                values.append(int(v))
                prev = v
        self._angles = tuple(angles)
        self._values = tuple(values)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls()

    @classmethod
    def from_deltas(cls, deltas: Iterable[tuple[Angle, int]]) -> "StepFunction":
        items = sorted(deltas, key=lambda jv: _KEY(jv[0]))
        merged: list[list] = []
        for a, dv in items:
            if merged and angle_compare(merged[-1][0], a) == 0:
                merged[-1][1] += dv
            else:
                merged.append([a, dv])
        out, acc = [], 0
        for a, dv in merged:
            acc += dv
            out.append((a, acc))
        return cls(out, _trusted=True)

    @property
    def jumps(self) -> tuple[tuple[Angle, int], ...]:
        return tuple(zip(self._angles, self._values))

    @property
    def angles(self) -> tuple[Angle, ...]:
        return self._angles

    def deltas(self) -> list[tuple[Angle, int]]:
        out, prev = [], 0
        for a, v in zip(self._angles, self._values):
            out.append((a, v - prev))
            prev = v
        return out

    def is_zero(self) -> bool:
        return not self._angles

    @property
    def value_at_pi(self) -> int:
        return self._values[-1] if self._values else 0

    def is_rational_jump(self) -> bool:
        return all(a.is_rational for a in self._angles)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if self._values != other._values:
            return False
        return all(angle_compare(a, b) == 0 for a, b in zip(self._angles, other._angles))

    __hash__ = None

    def __add__(self, other):
        return sf_add(self, other)

    def __neg__(self):
        return sf_negate(self)

    def __sub__(self, other):
        return sf_add(self, sf_negate(other))

    def __repr__(self):
        inner = ", ".join(f"({a.turn_text(8)}, {v})" for a, v in self.jumps)
        return f"StepFunction([{inner}])"


def bump(a: Angle, b: Angle, height: int) -> StepFunction:
    """``height`` on the open arc (a, b), 0 elsewhere; a < b in (0, pi]."""
    if angle_compare(a, b) >= 0:
        raise ValueError("bump needs a < b")
    if b.form.is_rational and b.form.const == 1:
        return StepFunction([(a, height)])
    return StepFunction([(a, height), (b, 0)])


def sf_add(f: StepFunction, g: StepFunction) -> StepFunction:
    return StepFunction.from_deltas(f.deltas() + g.deltas())


def sf_negate(f: StepFunction) -> StepFunction:
    return StepFunction([(a, -v) for a, v in f.jumps], _trusted=True)


def sf_scale(f: StepFunction, n: int) -> StepFunction:
    return StepFunction([(a, n * v) for a, v in f.jumps], _trusted=True)


def sf_pullback_power(f: StepFunction, d: int) -> StepFunction:
    """``g(omega) = f(omega^d)``."""
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return f
    jumps = f.jumps
    before = [0] + [v for _, v in jumps[:-1]]
    pre = [a.preimages(d) for a, _ in jumps]
    out = []
    for j in range(d):
        # on the j-th sector, d*phi sweeps [0, pi] upward (j even) or downward (j odd)
        order = range(len(jumps)) if j % 2 == 0 else range(len(jumps) - 1, -1, -1)
        for i in order:
            after = jumps[i][1] if j % 2 == 0 else before[i]
            out.append((pre[i][j], after))
    return StepFunction(out, _trusted=True)


def _locate(f: StepFunction, angle: Angle) -> tuple[int, bool]:
    """(number of jumps strictly below angle, angle is a jump)."""
    lo, hi = 0, len(f._angles)
    while lo < hi:
        mid = (lo + hi) // 2
        c = angle_compare(f._angles[mid], angle)
        if c == 0:
            return mid, True
        if c < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo, False


def sf_evaluate(f: StepFunction, angle: Angle, convention: str = AVERAGE):
    if convention not in (STRICT, AVERAGE):
        raise ValueError(f"unknown convention {convention!r}")
    i, at_jump = _locate(f, angle)
    if not at_jump:
        return f._values[i - 1] if i else 0
    if convention == STRICT:
        raise JumpCollision(f"evaluation point {angle!r} is a jump")
    before = f._values[i - 1] if i else 0
    v = Fraction(before + f._values[i], 2)
    return int(v) if v.denominator == 1 else v


@dataclass(frozen=True)
class Average:
    """Normalised circle average of a step function."""

    form: PiForm

    @property
    def is_exact_zero(self) -> bool:
        return self.form.is_zero()

    @property
    def exact(self) -> Fraction | None:
        return self.form.const if self.form.is_rational else None

    def enclosure(self) -> tuple:
        return self.form.enclosure()

    def __float__(self):
        return float(self.form)

    def __str__(self):
        if self.form.is_rational:
            return str(self.form.const)
        lo, hi = self.enclosure()
        return f"{self.form} in [{mpmath.nstr(lo, 20)}, {mpmath.nstr(hi, 20)}]"


def sf_average(f: StepFunction) -> Average:
    """``(1/2pi) * integral`` over the circle, as a formal combination of angles."""
    acc = PiForm(Fraction(f.value_at_pi))
    for a, dv in f.deltas():
        acc = acc - a.form.scale(dv)
    return Average(acc)


def sf_sum_over_dth_roots(f: StepFunction, d: int) -> int:
    """``sum_{r=0}^{d-1} f(e^{2 pi i r/d})`` using conjugation symmetry."""
    if d < 1:
        raise ValueError("d must be positive")
    total = 0
    for r in range(1, (d + 1) // 2):
        try:
            total += 2 * sf_evaluate(f, Angle.from_turn(Fraction(r, d)), STRICT)
        except JumpCollision:
            raise JumpCollision(f"root r={r} of order {d} lies on a jump", r=r, d=d) from None
    if d % 2 == 0:
        total += f.value_at_pi
    return total


def sf_support(f: StepFunction) -> list[tuple[Angle, Angle]]:
    """Maximal open arcs of (0, pi] on which f is nonzero away from its jumps.

    Interior jumps between two nonzero values do not split an arc.
    """
    arcs: list[tuple[Angle, Angle]] = []
    start = None
    for a, v in f.jumps:
        if v != 0 and start is None:
            start = a
        elif v == 0 and start is not None:
            arcs.append((start, a))
            start = None
    if start is not None:
        arcs.append((start, Angle.pi()))
    return arcs


def sf_supports_disjoint(f: StepFunction, g: StepFunction) -> bool:
    for a1, b1 in sf_support(f):
        for a2, b2 in sf_support(g):
            if not (angle_compare(b1, a2) <= 0 or angle_compare(b2, a1) <= 0):
                return False
    return True


# -- emission -----------------------------------------------------------------------

def sf_to_csv(f: StepFunction) -> str:
    """``angle_turns,value`` rows: the value on the arc starting at each angle."""
    rows = ["angle_turns,value", "0,0"]
    for a, v in f.jumps:
        rows.append(f"{a.turn_text()},{v}")
    return "\n".join(rows) + "\n"


def sf_to_svg(f: StepFunction, title: str = "", width: int = 640, height: int = 320) -> str:
    """Static step plot over turns in [0, 1/2] with jump markers."""
    pad = 40
    vals = [0] + [v for _, v in f.jumps]
    vmin, vmax = min(vals + [0]), max(vals + [0])
    if vmin == vmax:
        vmin, vmax = vmin - 1, vmax + 1
    xs = [0.0] + [float(a.form) / 2 for a in f.angles] + [0.5]

    def X(t):
        return pad + (width - 2 * pad) * (t / 0.5)

    def Y(v):
        return height - pad - (height - 2 * pad) * (v - vmin) / (vmax - vmin)

    pts = []
    for i, v in enumerate(vals):
        pts.append(f"{X(xs[i]):.3f},{Y(v):.3f}")
        pts.append(f"{X(xs[i + 1]):.3f},{Y(v):.3f}")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{Y(0):.3f}" x2="{width - pad}" y2="{Y(0):.3f}" stroke="#999"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="#999"/>',
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="2" points="{" ".join(pts)}"/>',
    ]
    for i, a in enumerate(f.angles):
        x = X(xs[i + 1])
        out.append(f'<circle cx="{x:.3f}" cy="{Y(vals[i + 1]):.3f}" r="3" fill="#c0392b"/>')
        out.append(f'<circle cx="{x:.3f}" cy="{Y(vals[i]):.3f}" r="3" fill="white" stroke="#c0392b"/>')
    out.append(f'<text x="{pad}" y="{height - 12}" font-size="11">0</text>')
    out.append(f'<text x="{width - pad - 10}" y="{height - 12}" font-size="11">1/2 turn</text>')
    out.append(f'<text x="4" y="{Y(vmax) + 4:.3f}" font-size="11">{vmax}</text>')
    out.append(f'<text x="4" y="{Y(vmin) + 4:.3f}" font-size="11">{vmin}</text>')
    if title:
        out.append(f'<text x="{pad}" y="20" font-size="13">{title}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
