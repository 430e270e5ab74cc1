"""Knots as Seifert matrices or as (signature function, Arf bit) pairs.

Operators: mirror, connected sum, (d,1)-cable, multiple copies. Matrix knots
stay matrices under mirror and sum; anything involving a cable or a Horn knot
lives only at the spectral level. Geometric facts (grope heights, solvability,
crossing counts) are carried as :class:`Tag` metadata with a citation and are
never computed.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from . import seifert as sf
from .exact_algebra import alg_cos_theta_m
from .stepfn import Angle, StepFunction, sf_add, sf_negate, sf_pullback_power, sf_scale

__all__ = [
    "Tag",
    "grope_height",
    "solvable",
    "MatrixKnot",
    "SpectralKnot",
    "Knot",
    "spectral",
    "mirror",
    "connected_sum",
    "cable_d1",
    "horn_knot",
    "copies",
    "unknot",
]

HORN = "Horn, gropes and signature functions of knots: P_m bounds a height 2 grope"
CABLE_ARF_NOTE = "arf copied through the (d,1)-cable by citation (Arf(J0) = 0 is a hypothesis of the family construction), not computed"


@dataclass(frozen=True)
class Tag:
    kind: str
    value: object
    citation: str

    def __str__(self):
        return f"{self.kind}({self.value}) [{self.citation}]"


def grope_height(h, citation: str) -> Tag:
    return Tag("grope_height", h, citation)


def solvable(h, citation: str) -> Tag:
    return Tag("solvable", h, citation)


def _tag_value(tags: Iterable[Tag], kind: str):
    vals = [t.value for t in tags if t.kind == kind]
    return min(vals) if vals else None


@dataclass(frozen=True, eq=False)
class SpectralKnot:
    sigma: StepFunction
    arf: int
    name: str = ""
    tags: frozenset = frozenset()
    parts: tuple = ()
    notes: tuple = ()
    multiplicity: int = 1

    def spectral(self) -> "SpectralKnot":
        return self

    def tag(self, kind: str):
        return _tag_value(self.tags, kind)

    def same_invariants(self, other) -> bool:
        o = spectral(other)
        return self.arf == o.arf and self.sigma == o.sigma

    def __repr__(self):
        return f"SpectralKnot({self.name or '?'}, arf={self.arf}, sigma={self.sigma!r})"


@dataclass(frozen=True)
class MatrixKnot:
    matrix: sf.SeifertMatrix
    name: str = ""
    tags: frozenset = frozenset()
    parts: tuple = ()

    def __post_init__(self):
        if not isinstance(self.matrix, sf.SeifertMatrix):
            object.__setattr__(self, "matrix", sf.SeifertMatrix(self.matrix))
        if not sf.validate(self.matrix):
            raise sf.InvalidSeifertMatrix(f"invalid Seifert matrix {self.matrix.tolist()}")

    def spectral(self) -> SpectralKnot:
        # signature_function is memoised per matrix, so repeated calls agree
        return SpectralKnot(sf.signature_function(self.matrix), sf.arf(self.matrix), self.name,
                            self.tags, self.parts)

    @property
    def sigma(self) -> StepFunction:
        return sf.signature_function(self.matrix)

    @property
    def arf(self) -> int:
        return sf.arf(self.matrix)

    def tag(self, kind: str):
        return _tag_value(self.tags, kind)

    def same_invariants(self, other) -> bool:
        return self.spectral().same_invariants(other)


Knot = MatrixKnot | SpectralKnot


def spectral(K) -> SpectralKnot:
    return K.spectral()


def _mirror_name(name: str) -> str:
    if not name:
        return ""
    return name[1:] if name.startswith("-") else "-" + name


def mirror(K):
    if isinstance(K, MatrixKnot):
        return MatrixKnot(K.matrix.mirror(), _mirror_name(K.name), K.tags, K.parts)
    return replace(K, sigma=sf_negate(K.sigma), name=_mirror_name(K.name))


def _sum_tags(t1: frozenset, t2: frozenset) -> frozenset:
    out = set()
    for kind in ("grope_height", "solvable"):
        a = [t for t in t1 if t.kind == kind]
        b = [t for t in t2 if t.kind == kind]
        if a and b:
            out.add(min(a + b, key=lambda t: t.value))
    return frozenset(out)


def connected_sum(K1, K2, name: str = ""):
    name = name or f"{K1.name or '?'} # {K2.name or '?'}"
    parts = (K1, K2)
    tags = _sum_tags(K1.tags, K2.tags)
    if isinstance(K1, MatrixKnot) and isinstance(K2, MatrixKnot):
        return MatrixKnot(K1.matrix.direct_sum(K2.matrix), name, tags, parts)
    s1, s2 = spectral(K1), spectral(K2)
    return SpectralKnot(sf_add(s1.sigma, s2.sigma), s1.arf ^ s2.arf, name, tags, parts,
                        s1.notes + s2.notes)


def cable_d1(K, d: int, name: str = "") -> SpectralKnot:
    """The (d,1)-cable at the level of signatures: sigma(w) -> sigma(w^d)."""
    if d < 1:
        raise ValueError("d must be positive")
    s = spectral(K)
    if d == 1:
        return s
    return SpectralKnot(sf_pullback_power(s.sigma, d), s.arf, name or f"({d},1)-cable of {s.name or '?'}",
                        frozenset(), (K,), s.notes + (CABLE_ARF_NOTE,))


def horn_knot(m: int) -> SpectralKnot:
    """Signature 0 below theta_m and 2 above, with cos theta_m = 1 - 1/(2 m^(1/3))."""
    if m < 1:
        raise ValueError("m must be positive")
    jump = Angle.from_cos(alg_cos_theta_m(m))
    return SpectralKnot(StepFunction([(jump, 2)]), 0, f"P_{m}",
                        frozenset({grope_height(2, HORN)}),
                        notes=("arf 0 because a height 2 grope forces (0)-solvability",))


def copies(K, N: int, name: str = "") -> SpectralKnot:
    """Connected sum of N copies, held as a multiplicity."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    s = spectral(K)
    return SpectralKnot(sf_scale(s.sigma, N), (s.arf * N) % 2, name or f"{N} x {s.name or '?'}",
                        s.tags if N else frozenset(), (K,), s.notes, N * s.multiplicity)


def unknot() -> SpectralKnot:
    return SpectralKnot(StepFunction(), 0, "unknot",
                        frozenset({grope_height(float("inf"), "the unknot is slice"),
                                   solvable(float("inf"), "the unknot is slice")}))
