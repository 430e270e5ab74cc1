"""Iterated infection towers as plain trees.

A node infects a seed knot along one or more unknotted axes; each child is a
subtree or a leaf knot. The standard tower has a chain of ``K^k`` seeds
(one axis each) under a top seed ``E_m # E_m`` with two axes whose children
are mirror images. Heights and crossing counts are tags with citations.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import knotcalc as kc
from . import seifert as sf
from .knotcalc import MatrixKnot, Tag

__all__ = [
    "Axis",
    "Infection",
    "UnForm",
    "TowerShapeError",
    "build_tower",
    "mirror_tree",
    "trees_equal",
    "leaves",
    "flatten_to_un_form",
    "rebuild_from_un_form",
    "is_order_two_by_construction",
    "tags_of_tower",
    "crossing_budget",
    "tower_text",
    "tower_record",
]

AXIS_DEPTH = ("unknotted axis with zero linking number lying in the commutator subgroup; "
              "infection along it adds one to grope height and solvability "
              "(Cochran-Orr-Teichner; Cochran-Harvey-Leidy)")
E_AMPHICHIRAL = "E_m is negatively amphichiral, so E_m # E_m is the model W # W"
ORDER_TWO = "tower with mirrored top children over a negatively amphichiral seed has order at most 2 (Cochran-Harvey-Leidy)"
CROSS_K = "diagram of E_1 # E_1 with at most 16 crossings"
CROSS_KK = "ribbon seed diagram with at most 12 crossings"


class TowerShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    name: str
    linking_number: int = 0
    depth_tag: Tag = Tag("derived_depth", 1, AXIS_DEPTH)

    def mirrored(self) -> "Axis":
        name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return Axis(name, self.linking_number, self.depth_tag)


@dataclass(frozen=True, eq=False)
class Infection:
    seed: MatrixKnot
    axes: tuple
    children: tuple

    def __post_init__(self):
        if len(self.axes) != len(self.children):
            raise TowerShapeError("axis count does not match child count")
        for a in self.axes:
            if a.linking_number != 0:
                raise TowerShapeError(f"axis {a.name} links the seed")


def _seed_kk(k: int) -> MatrixKnot:
    return MatrixKnot(sf.seifert_61(), f"K^{k}", frozenset({Tag("crossings", 12, CROSS_KK)}))


def _seed_top(m: int) -> MatrixKnot:
    e = MatrixKnot(sf.seifert_Em(m), f"E_{m}", frozenset({Tag("negatively_amphichiral", True, E_AMPHICHIRAL)}))
    tags = {Tag("negatively_amphichiral_square", True, E_AMPHICHIRAL)}
    if m == 1:
        tags.add(Tag("crossings", 16, CROSS_K))
    return MatrixKnot(sf.seifert_Em(m).direct_sum(sf.seifert_Em(m)), "K", frozenset(tags), (e, e))


def mirror_tree(t):
    if not isinstance(t, Infection):
        return kc.mirror(t)
    return Infection(kc.mirror(t.seed), tuple(a.mirrored() for a in t.axes),
                     tuple(mirror_tree(c) for c in t.children))


def build_tower(n: int, infectant, m: int = 1) -> Infection:
    """``J^k = K^k(J^{k-1})`` for k < n and ``J^n = K(J^{n-1}, -J^{n-1})``."""
    if n < 2:
        raise ValueError("tower depth n must be at least 2")
    if m < 1:
        raise ValueError("m must be positive")
    kc.spectral(infectant)  # leaves must carry spectral data
    node = infectant
    for k in range(1, n):
        node = Infection(_seed_kk(k), (Axis(f"eta_{k}"),), (node,))
    return Infection(_seed_top(m), (Axis("alpha"), Axis("beta")), (node, mirror_tree(node)))


def trees_equal(a, b) -> bool:
    if isinstance(a, Infection) != isinstance(b, Infection):
        return False
    if not isinstance(a, Infection):
        return a.name == b.name and a.same_invariants(b)
    if a.seed.matrix != b.seed.matrix or a.seed.name != b.seed.name:
        return False
    if [x.name for x in a.axes] != [x.name for x in b.axes]:
        return False
    return all(trees_equal(x, y) for x, y in zip(a.children, b.children))


def leaves(t) -> list:
    if not isinstance(t, Infection):
        return [t]
    out = []
    for c in t.children:
        out.extend(leaves(c))
    return out


def _chain(t) -> tuple[int, object]:
    depth = 0
    while isinstance(t, Infection):
        if len(t.axes) != 1:
            raise TowerShapeError("intermediate level must have exactly one axis")
        t = t.children[0]
        depth += 1
    return depth, t


def _tower_shape(t) -> tuple[int, int, object, object]:
    if not isinstance(t, Infection) or len(t.axes) != 2:
        raise TowerShapeError("top level must infect along two axes")
    d1, leaf1 = _chain(t.children[0])
    d2, leaf2 = _chain(t.children[1])
    if d1 != d2 or d1 < 1:
        raise TowerShapeError("branches have different depths")
    m = t.seed.parts[0].matrix.entries[0][0] if t.seed.parts else 1
    return d1 + 1, m, leaf1, leaf2


@dataclass(frozen=True, eq=False)
class UnForm:
    """``U^n`` infected at its two bottom axes by an infectant pair."""

    n: int
    m: int
    axes: tuple
    infectants: tuple

    def __str__(self):
        a, b = self.infectants
        return f"U^{self.n}_{{{self.axes[0]},{self.axes[1]}}}({a.name}, {b.name})"


def flatten_to_un_form(t: Infection) -> UnForm:
    n, m, leaf1, leaf2 = _tower_shape(t)
    return UnForm(n, m, ("eta_1", "-eta_1"), (leaf1, leaf2))


def rebuild_from_un_form(u: UnForm) -> Infection:
    return build_tower(u.n, u.infectants[0], u.m)


def is_order_two_by_construction(t) -> tuple[bool, str]:
    try:
        _tower_shape(t)
    except TowerShapeError as e:
        return False, str(e)
    parts = t.seed.parts
    if len(parts) != 2 or parts[0].matrix != parts[1].matrix:
        return False, "top seed is not of the form W # W"
    if parts[0].tag("negatively_amphichiral") is not True:
        return False, "summand not tagged negatively amphichiral"
    if not trees_equal(t.children[1], mirror_tree(t.children[0])):
        return False, "top children are not mirror images"
    return True, ORDER_TWO


def _path_tags(t, kind: str):
    """Minimum over root-to-leaf paths of leaf tag plus axis depths."""
    if not isinstance(t, Infection):
        return kc.spectral(t).tag(kind)
    best = None
    for axis, child in zip(t.axes, t.children):
        v = _path_tags(child, kind)
        if v is None:
            return None
        v = v + axis.depth_tag.value
        best = v if best is None else min(best, v)
    return best


def tags_of_tower(t) -> dict[str, Tag]:
    out = {}
    h = _path_tags(t, "grope_height")
    if h is not None:
        out["grope_height"] = Tag("grope_height", h, "leaf grope height plus one per infection level; " + AXIS_DEPTH)
    s = _path_tags(t, "solvable")
    if s is not None:
        out["solvable"] = Tag("solvable", s, "leaf solvability plus one per infection level; " + AXIS_DEPTH)
    return out


def _seeds(t):
    if not isinstance(t, Infection):
        return []
    out = [t.seed]
    for c in t.children:
        out.extend(_seeds(c))
    return out


def crossing_budget(t) -> int:
    total = 0
    for s in _seeds(t):
        c = s.tag("crossings")
        if c is None:
            raise ValueError(f"seed {s.name} carries no crossing tag")
        total += c
    return total


def tower_text(t, indent: int = 0) -> str:
    pad = "  " * indent
    if not isinstance(t, Infection):
        s = kc.spectral(t)
        return f"{pad}leaf {s.name or '?'} (arf {s.arf}, {len(s.sigma.jumps)} jumps)"
    lines = [f"{pad}{t.seed.name} infected along " + ", ".join(a.name for a in t.axes)]
    for a, c in zip(t.axes, t.children):
        lines.append(f"{pad}  [{a.name}]")
        lines.append(tower_text(c, indent + 2))
    return "\n".join(lines)


def tower_record(t) -> dict:
    if not isinstance(t, Infection):
        s = kc.spectral(t)
        return {"leaf": s.name, "arf": s.arf, "jumps": len(s.sigma.jumps)}
    return {
        "seed": t.seed.name,
        "seifert": t.seed.matrix.tolist(),
        "axes": [a.name for a in t.axes],
        "children": [tower_record(c) for c in t.children],
    }
