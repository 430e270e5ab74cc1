"""Line-based knot description files.

    name: trefoil
    seifert: [[-1, 1], [0, -1]]
    tags: crossings=3

    name: horn
    spectral: jumps=[(1/6, 2), (cos(3/4), 0)], arf=0

Jump angles are turn fractions (``1/6`` means ``2pi/6``) or ``cos(q)`` for the
angle in (0, pi) with rational cosine ``q``; ``theta(m)`` is Horn's angle.
Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction

from . import knotcalc as kc
from .exact_algebra import alg_cos_theta_m, alg_from_rational
from .seifert import InvalidSeifertMatrix, SeifertMatrix, validate
from .stepfn import Angle, StepFunction

__all__ = ["KnotParseError", "parse_knot", "parse_knot_file"]

USER_TAG = "supplied in the knot file"


class KnotParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Field:
    value: str
    line: int
    column: int


def _fields(text: str) -> dict[str, _Field]:
    out: dict[str, _Field] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise KnotParseError("expected 'key: value'", ln, len(line) - len(line.lstrip()) + 1)
        key, _, value = line.partition(":")
        key = key.strip().lower()
        if key not in ("name", "seifert", "spectral", "tags"):
            raise KnotParseError(f"unknown key {key!r}", ln, line.index(key) + 1 if key else 1)
        if key in out:
            raise KnotParseError(f"duplicate key {key!r}", ln, 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip())) + (len(line) - len(line.lstrip()))
        out[key] = _Field(value.strip(), ln, col)
    if not out:
        raise KnotParseError("empty knot description", 1, 1)
    return out


def _literal(f: _Field):
    try:
        return ast.literal_eval(f.value)
    except SyntaxError as e:
        raise KnotParseError(f"malformed literal ({e.msg})", f.line, f.column + (e.offset or 1) - 1) from None
    except ValueError as e:
        raise KnotParseError(f"malformed literal ({e})", f.line, f.column) from None


def _parse_angle(tok: str, f: _Field, col: int) -> Angle:
    tok = tok.strip()
    m = re.fullmatch(r"cos\(\s*(-?\d+(?:/\d+)?)\s*\)", tok)
    if m:
        return Angle.from_cos(alg_from_rational(Fraction(m.group(1))))
    m = re.fullmatch(r"theta\(\s*(\d+)\s*\)", tok)
    if m:
        return Angle.from_cos(alg_cos_theta_m(int(m.group(1))))
    if re.fullmatch(r"\d+(?:/\d+)?", tok):
        t = Fraction(tok)
        if not 0 < t < Fraction(1, 2):
            raise KnotParseError(f"jump turn {tok} not in (0, 1/2)", f.line, col)
        return Angle.from_turn(t)
    raise KnotParseError(f"cannot read angle {tok!r}", f.line, col)


_JUMP = re.compile(r"\(\s*([^,()]+(?:\([^()]*\))?)\s*,\s*(-?\d+)\s*\)")


def _parse_spectral(f: _Field) -> tuple[StepFunction, int]:
    m = re.fullmatch(r"jumps\s*=\s*\[(.*)\]\s*,\s*arf\s*=\s*([01])", f.value)
    if not m:
        raise KnotParseError("expected 'jumps=[(angle, value), ...], arf=0|1'", f.line, f.column)
    body, arf = m.group(1), int(m.group(2))
    start = f.value.index("[") + 1
    jumps, pos = [], 0
    for jm in _JUMP.finditer(body):
        gap = body[pos:jm.start()].strip().strip(",").strip()
        if gap:
            raise KnotParseError(f"unexpected {gap!r}", f.line, f.column + start + pos)
        jumps.append((_parse_angle(jm.group(1), f, f.column + start + jm.start(1)), int(jm.group(2))))
        pos = jm.end()
    if body[pos:].strip().strip(","):
        raise KnotParseError(f"unexpected {body[pos:].strip()!r}", f.line, f.column + start + pos)
    try:
        return StepFunction(jumps), arf
    except ValueError as e:
        raise KnotParseError(str(e), f.line, f.column) from None


def _parse_tags(f: _Field) -> frozenset:
    tags = set()
    for part in filter(None, (p.strip() for p in f.value.split(","))):
        k, eq, v = part.partition("=")
        if not eq or not k.strip():
            raise KnotParseError(f"tag {part!r} must be kind=value", f.line, f.column + f.value.index(part))
        v = v.strip()
        val = int(v) if re.fullmatch(r"-?\d+", v) else v
        tags.add(kc.Tag(k.strip(), val, USER_TAG))
    return frozenset(tags)


def parse_knot(text: str):
    fields = _fields(text)
    name = fields["name"].value if "name" in fields else ""
    tags = _parse_tags(fields["tags"]) if "tags" in fields else frozenset()
    if ("seifert" in fields) == ("spectral" in fields):
        ln = fields["name"].line if "name" in fields else 1
        raise KnotParseError("need exactly one of 'seifert' or 'spectral'", ln, 1)
    if "seifert" in fields:
        f = fields["seifert"]
        lit = _literal(f)
        if not isinstance(lit, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in lit) or \
                not all(isinstance(x, int) for r in lit for x in r):
            raise KnotParseError("seifert must be a list of integer rows", f.line, f.column)
        try:
            A = SeifertMatrix(lit)
        except InvalidSeifertMatrix as e:
            raise KnotParseError(str(e), f.line, f.column) from None
        if not validate(A):
            raise KnotParseError("not a Seifert matrix: need even size and det(A - A^T) = 1", f.line, f.column)
        return kc.MatrixKnot(A, name, tags)
    sigma, arf = _parse_spectral(fields["spectral"])
    return kc.SpectralKnot(sigma, arf, name, tags)


def parse_knot_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_knot(fh.read())
