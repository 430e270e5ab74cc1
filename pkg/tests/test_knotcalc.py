import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import step_functions
from twotorsion import knotcalc as kc
from twotorsion.exact_algebra import alg_cos_theta_m, alg_compare, EQUAL
from twotorsion.seifert import seifert_61, seifert_trefoil, signature_function
from twotorsion.stepfn import STRICT, Angle, sf_evaluate, sf_pullback_power


def test_horn_knot_shape():
    for m, c in [(1, Fraction(1, 2)), (8, Fraction(3, 4)), (27, Fraction(5, 6)), (64, Fraction(7, 8))]:
        P = kc.horn_knot(m)
        (a, v), = P.sigma.jumps
        assert v == 2 and P.sigma.value_at_pi == 2 and P.arf == 0
        assert a.cos.is_rational and a.cos.rational == c
        assert P.tag("grope_height") == 2


def test_horn_knot_non_cube_angle():
    (a, _), = kc.horn_knot(5).sigma.jumps
    assert alg_compare(a.cos, alg_cos_theta_m(5)) == EQUAL
    assert math.isclose(a.radians(), math.acos(1 - 0.5 / 5 ** (1 / 3)), rel_tol=1e-13)


def test_matrix_connected_sum_stays_matrix():
    t = kc.MatrixKnot(seifert_trefoil(), "3_1")
    s = kc.connected_sum(t, t)
    assert isinstance(s, kc.MatrixKnot) and s.matrix.size == 4
    assert s.sigma == signature_function(seifert_trefoil()) + signature_function(seifert_trefoil())
    assert s.arf == 0


def test_mirror_and_name():
    t = kc.MatrixKnot(seifert_61(), "6_1")
    assert kc.mirror(t).name == "-6_1" and kc.mirror(kc.mirror(t)).name == "6_1"
    assert kc.mirror(t).sigma == -t.sigma


@settings(max_examples=100, deadline=None)
@given(step_functions(), step_functions(), st.integers(0, 1), st.integers(0, 1))
def test_spectral_sum_laws(f, g, a, b):
    K, J = kc.SpectralKnot(f, a, "K"), kc.SpectralKnot(g, b, "J")
    s = kc.connected_sum(K, J)
    assert s.sigma == f + g and s.arf == a ^ b
    m = kc.mirror(K)
    assert kc.connected_sum(K, m).sigma.is_zero() and kc.connected_sum(K, m).arf == 0


@settings(max_examples=100, deadline=None)
@given(step_functions(), st.integers(1, 7))
def test_cable_formula(f, d):
    K = kc.SpectralKnot(f, 0, "K")
    C = kc.cable_d1(K, d)
    assert C.sigma == sf_pullback_power(f, d)
    assert C.arf == K.arf
    if d > 1:
        # the (1,1)-cable is the knot itself
        assert kc.CABLE_ARF_NOTE in C.notes and not C.tags


def test_copies_and_tags():
    P = kc.horn_knot(8)
    five = kc.copies(P, 5)
    assert five.sigma.value_at_pi == 10
    assert five.tag("grope_height") == 2
    assert kc.copies(P, 0).sigma.is_zero()
    with pytest.raises(ValueError):
        kc.copies(P, -1)
    # sum with an untagged knot drops the tag
    assert kc.connected_sum(P, kc.SpectralKnot(P.sigma, 0, "x")).tag("grope_height") is None


def test_unknot():
    assert kc.unknot().sigma.is_zero() and kc.unknot().arf == 0


def test_j_prime_values_at_roots():
    # S = -P_1 # P_8 is 2 on (theta_8, theta_1); J' = S - cable_7(S)
    S = kc.connected_sum(kc.mirror(kc.horn_knot(1)), kc.horn_knot(8))
    Jp = kc.connected_sum(S, kc.mirror(kc.cable_d1(S, 7)))
    assert sf_evaluate(Jp.sigma, Angle.from_turn(Fraction(1, 7)), STRICT) == 2
    for r in (2, 3):
        assert sf_evaluate(Jp.sigma, Angle.from_turn(Fraction(r, 7)), STRICT) == 0
