import json
import math
from fractions import Fraction

import pytest

from twotorsion import planner as pl
from twotorsion.exact_algebra import alg_cos_theta_m
from twotorsion.stepfn import STRICT, Angle, JumpCollision, sf_evaluate, sf_supports_disjoint


@pytest.fixture(scope="module")
def plan5():
    return pl.plan_family(2, 5, abort=False)


def test_first_item_parameters():
    assert pl.select_parameters(1) == [(1, 8, 7)]


def test_integer_stepping():
    assert pl.select_parameters(3, step="integer") == [(1, 3, 7), (3, 32, 11), (32, 84, 13)]


def test_selection_invariants():
    for m_lo, m_hi, d in pl.select_parameters(5):
        lo = math.acos(float(alg_cos_theta_m(m_lo)))
        hi = math.acos(float(alg_cos_theta_m(m_hi)))
        assert 2 * math.pi / lo < d < 2 * math.pi / hi
        assert d < 4 * math.pi / lo


def test_selection_rejects_bad_args():
    for kw in ({"count": 0}, {"count": 1, "start_m": 0}, {"count": 1, "step": "x"}):
        with pytest.raises(ValueError):
            pl.select_parameters(**kw)


def test_copies():
    C = 2788531200
    assert pl.copies_for(C, pl.STRICT_HALF) == C // 2 + 1
    assert pl.copies_for(C, pl.FIGURE_ONE) == C
    with pytest.raises(ValueError):
        pl.copies_for(C, "other")


def test_j0_values_against_float_model():
    # S is 2 on (theta_8, theta_1) with cosines 3/4 and 1/2; J'(w) = S(w) - S(w^7)
    lo, hi = math.acos(0.75), math.pi / 3

    def S(x):
        x = x % (2 * math.pi)
        x = min(x, 2 * math.pi - x)
        return 2 if lo < x < hi else 0

    _, Jp, J0 = pl.build_j0(1, 8, 7, 1)
    for k in range(1, 200):
        x = math.pi * k / 200 + 1e-7
        try:
            got = sf_evaluate(Jp.sigma, Angle.from_turn(Fraction(k, 400) + Fraction(1, 10**8)), STRICT)
        except JumpCollision:
            continue
        assert got == S(x) - S(7 * x)
    assert J0.tag("grope_height") == 2 and J0.tag("solvable") == 0


def test_plan_items_pass_required_checks(plan5):
    assert plan5.passed
    assert [(i.m_lo, i.m_hi, i.d) for i in plan5.items] == pl.select_parameters(5)
    for it in plan5.items:
        names = {c.name for c in it.checks}
        assert {"interval", "narrowness", "prime", "off-jump", "(4) Arf = 0", "(4) integral = 0"} <= names
        assert all(c.passed for c in it.checks if c.required)


def test_reverse_direction_is_informational(plan5):
    notes = [(it.index, c) for it in plan5.items for c in it.checks if not c.required]
    assert notes and all(c.name.startswith("(3')") for _, c in notes)
    failing = [c.witness for _, c in notes if not c.passed]
    # every failure is a genuine nonzero value at a root of a later prime
    for r, d, v in failing:
        assert v != 0 and 0 < r < d


def test_abort_raises_with_witness():
    # two items sharing a prime interval break the required direction
    params = [(1, 8, 7), (1, 8, 7)]
    with pytest.raises(pl.PlanVerificationError) as ei:
        pl.plan_family(2, 2, params=params)
    assert ei.value.witness is not None


def test_json_roundtrip(plan5):
    text = pl.plan_to_json(plan5)
    rec = json.loads(text)
    again = pl.plan_from_record(rec)
    assert pl.plan_to_json(again) == text


def test_figure_one_convention():
    p = pl.plan_family(2, 1, pl.FIGURE_ONE)
    assert p.C == 2788531200 and p.items[0].N == p.C


def test_full_construction():
    con = pl.full_construction(2, 2, subsets=[(1, 2)])
    assert con.crossing_budgets == (40, 40)
    assert all(t["grope_height"].value == 4 and t["solvable"].value == 2 for t in con.tower_tags)
    assert all(c.valid for c in con.certificates)


def test_first_eight_items_invariants():
    params = pl.select_parameters(8)
    primes = [d for _, _, d in params]
    assert primes == sorted(set(primes))
    for (_, hi, _), (lo, _, _) in zip(params, params[1:]):
        assert hi == lo
    S = [pl.build_j0(a, b, d, 1)[0] for a, b, d in params]
    for i in range(8):
        for j in range(i + 1, 8):
            assert sf_supports_disjoint(S[i].sigma, S[j].sigma)


def test_large_multiplicity_is_exact():
    _, _, J0 = pl.build_j0(1, 8, 7, 10**9)
    assert sf_evaluate(J0.sigma, Angle.from_turn(Fraction(1, 7)), STRICT) == 2 * 10**9
