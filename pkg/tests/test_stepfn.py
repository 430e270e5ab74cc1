import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import step_average, step_value
from strategies import rational_jumps, step_functions, to_step, turns
from twotorsion.exact_algebra import alg_cos_theta_m, alg_from_rational
from twotorsion.stepfn import (
    AVERAGE,
    STRICT,
    Angle,
    JumpCollision,
    StepFunction,
    bump,
    sf_average,
    sf_evaluate,
    sf_pullback_power,
    sf_sum_over_dth_roots,
    sf_support,
    sf_supports_disjoint,
    sf_to_csv,
    sf_to_svg,
)

F = Fraction


def T(t):
    return Angle.from_turn(F(t))


# -- angles ------------------------------------------------------------------------------

def test_angle_from_cos_recognises_rational_turns():
    assert Angle.from_cos(alg_from_rational(F(1, 2))).turn == F(1, 6)
    assert Angle.from_cos(alg_from_rational(0)).turn == F(1, 4)
    assert Angle.from_cos(alg_from_rational(-1)).turn == F(1, 2)
    # theta_8 has cosine 3/4, not a rational turn
    assert Angle.from_cos(alg_cos_theta_m(8)).turn is None


def test_angle_order_matches_float():
    angles = [T(F(1, 7)), Angle.from_cos(alg_cos_theta_m(8)), T(F(1, 9)), Angle.from_cos(alg_cos_theta_m(2)), T(F(2, 5))]
    got = sorted(angles)
    assert [a.radians() for a in got] == sorted(a.radians() for a in angles)


def test_angle_equality_across_routes():
    assert T(F(1, 12)) == Angle.from_cos(alg_cos_theta_m(1)).preimages(2)[0]
    assert T(F(1, 6)) == Angle.from_cos(alg_cos_theta_m(1))


def test_turn_text():
    assert T(F(1, 6)).turn_text() == "1/6"
    txt = Angle.from_cos(alg_cos_theta_m(2)).turn_text(12)
    assert txt.startswith("~") and abs(float(txt[1:]) - math.acos(1 - 0.5 / 2 ** (1 / 3)) / (2 * math.pi)) < 1e-11


@settings(max_examples=200, deadline=None)
@given(turns, st.integers(1, 9))
def test_preimages_of_rational_turn(t, d):
    pre = Angle.from_turn(t).preimages(d)
    assert len(pre) == d
    expected = sorted(x for k in range(d + 1) for x in ((k + t) / d, (k - t) / d) if 0 < x < F(1, 2))
    assert [p.turn for p in pre] == expected


def test_preimages_of_horn_angle_float():
    a = Angle.from_cos(alg_cos_theta_m(3))
    for d in (2, 5):
        for p in a.preimages(d):
            assert abs(math.cos(d * p.radians()) - float(a.cos)) < 1e-12


# -- step functions -------------------------------------------------------------------------

def test_construction_rejects_endpoints_and_duplicates():
    with pytest.raises(ValueError):
        StepFunction([(Angle.zero(), 1)])
    with pytest.raises(ValueError):
        StepFunction([(Angle.pi(), 1)])
    with pytest.raises(ValueError):
        StepFunction([(T(F(1, 6)), 1), (Angle.from_cos(alg_from_rational(F(1, 2))), 2)])


def test_spurious_jumps_dropped():
    f = StepFunction([(T(F(1, 8)), 0), (T(F(1, 6)), 2), (T(F(1, 5)), 2)])
    assert len(f.jumps) == 1


def test_bump_and_evaluate_conventions():
    f = bump(T(F(1, 6)), T(F(1, 3)), 2)
    assert sf_evaluate(f, T(F(1, 4))) == 2
    assert sf_evaluate(f, T(F(1, 12))) == 0
    assert sf_evaluate(f, T(F(1, 6)), AVERAGE) == 1
    with pytest.raises(JumpCollision):
        sf_evaluate(f, T(F(1, 6)), STRICT)
    g = bump(T(F(1, 6)), Angle.pi(), 3)
    assert g.value_at_pi == 3 and len(g.jumps) == 1
    assert sf_evaluate(StepFunction([(T(F(1, 6)), 1)]), T(F(1, 6))) == F(1, 2)


@settings(max_examples=200, deadline=None)
@given(rational_jumps(), turns)
def test_evaluation_matches_oracle(jumps, t):
    f = to_step(jumps)
    want = step_value(jumps, t)
    if want is None:
        with pytest.raises(JumpCollision):
            sf_evaluate(f, Angle.from_turn(t), STRICT)
    else:
        assert sf_evaluate(f, Angle.from_turn(t), STRICT) == want


@settings(max_examples=200, deadline=None)
@given(rational_jumps())
def test_average_matches_oracle(jumps):
    avg = sf_average(to_step(jumps))
    assert avg.exact == step_average(jumps)
    assert avg.is_exact_zero == (step_average(jumps) == 0)


def test_average_of_horn_bump_is_symbolic():
    a, b = Angle.from_cos(alg_cos_theta_m(8)), Angle.from_cos(alg_cos_theta_m(2))
    f = bump(a, b, 2)
    avg = sf_average(f)
    assert avg.exact is None and not avg.is_exact_zero
    lo, hi = avg.enclosure()
    width = (b.radians() - a.radians()) / math.pi * 2
    assert abs(float(lo) - width) < 1e-12 and abs(float(hi) - width) < 1e-12
    # identical angle forms cancel term by term
    assert sf_average(f - f).is_exact_zero


@settings(max_examples=200, deadline=None)
@given(step_functions(), st.integers(1, 6))
def test_pullback_pointwise(f, d):
    g = sf_pullback_power(f, d)
    for k in range(1, 24):
        t = F(k, 48) + F(1, 997)
        if t >= F(1, 2):
            break
        try:
            lhs = sf_evaluate(g, Angle.from_turn(t), STRICT)
            rhs = sf_evaluate(f, Angle.from_turn((d * t) % 1), STRICT)
        except JumpCollision:
            continue
        assert lhs == rhs


def test_root_sum_collision_reports_root():
    f = bump(T(F(1, 6)), T(F(1, 3)), 2)
    assert sf_sum_over_dth_roots(f, 5) == 4
    with pytest.raises(JumpCollision) as ei:
        sf_sum_over_dth_roots(f, 6)
    assert (ei.value.r, ei.value.d) == (1, 6)


def test_support_open_arcs():
    f = bump(T(F(1, 10)), T(F(1, 6)), 2) + bump(T(F(1, 6)), T(F(1, 4)), -1)
    arcs = sf_support(f)
    assert [(a.turn, b.turn) for a, b in arcs] == [(F(1, 10), F(1, 4))]
    assert sf_supports_disjoint(bump(T(F(1, 10)), T(F(1, 6)), 1), bump(T(F(1, 6)), T(F(1, 4)), 1))
    assert not sf_supports_disjoint(bump(T(F(1, 10)), T(F(1, 5)), 1), bump(T(F(1, 6)), T(F(1, 4)), 1))


def test_pullback_of_horn_bump_has_seven_arcs():
    f = bump(Angle.from_cos(alg_cos_theta_m(8)), Angle.from_cos(alg_cos_theta_m(1)), 2)
    arcs = sf_support(sf_pullback_power(f, 7))
    assert len(arcs) == 7
    lo, hi = math.acos(0.75), math.pi / 3
    for a, b in arcs:
        mid = (a.radians() + b.radians()) / 2
        x = (7 * mid) % (2 * math.pi)
        assert lo < x < hi or lo < 2 * math.pi - x < hi


def test_csv_and_svg_deterministic():
    f = bump(Angle.from_cos(alg_cos_theta_m(8)), Angle.from_cos(alg_cos_theta_m(1)), 2)
    csv = sf_to_csv(f)
    lines = csv.strip().splitlines()
    assert lines[0] == "angle_turns,value" and lines[1] == "0,0"
    assert lines[-1] == "1/6,0"
    assert sf_to_svg(f, "x") == sf_to_svg(f, "x")
    assert sf_to_svg(f).startswith("<svg")
