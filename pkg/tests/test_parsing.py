from fractions import Fraction

import pytest

from twotorsion import knotcalc as kc
from twotorsion.parsing import KnotParseError, parse_knot
from twotorsion.seifert import seifert_trefoil
from twotorsion.stepfn import STRICT, Angle, sf_evaluate


def test_seifert_file():
    K = parse_knot("name: trefoil\nseifert: [[-1, 1], [0, -1]]  # standard\ntags: crossings=3\n")
    assert isinstance(K, kc.MatrixKnot)
    assert K.matrix == seifert_trefoil() and K.name == "trefoil"
    assert K.tag("crossings") == 3


def test_spectral_file():
    K = parse_knot("name: h\nspectral: jumps=[(1/12, 2), (cos(0), 0), (theta(8), 1)], arf=1\n")
    assert isinstance(K, kc.SpectralKnot) and K.arf == 1
    assert [v for _, v in K.sigma.jumps] == [2, 1, 0]
    assert sf_evaluate(K.sigma, Angle.from_turn(Fraction(1, 5)), STRICT) == 1


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("name: x\nseifert: [[1, 0], [0, 1]]\n", 2, 10),
    ("name: x\nseifert: [[1, 0], [0, 1\n", 2, None),
    ("name: x\nbogus: 1\n", 2, 1),
    ("name: x\nspectral: jumps=[(3/4, 2)], arf=0\n", 2, None),
    ("name: x\nspectral: jumps=[(1/6, 2)] arf=0\n", 2, 11),
    ("name: x\nspectral: jumps=[(1/6, 2), (bad, 1)], arf=0\n", 2, None),
    ("name: x\n", 1, 1),
    ("name: x\nseifert: [[-1, 1], [0, -1]]\ntags: crossings\n", 3, None),
])
def test_errors_carry_position(text, line, column):
    with pytest.raises(KnotParseError) as ei:
        parse_knot(text)
    assert ei.value.line == line
    if column is not None:
        assert ei.value.column == column
    assert f"line {line}" in str(ei.value)


def test_bad_angle_column_points_at_token():
    text = "spectral: jumps=[(1/6, 2), (bad, 1)], arf=0"
    with pytest.raises(KnotParseError) as ei:
        parse_knot(text)
    assert text[ei.value.column - 1:].startswith("bad")
