from fractions import Fraction

import pytest

from oracles import roots_sum
from twotorsion import knotcalc as kc
from twotorsion import obstruct as ob
from twotorsion.stepfn import Angle, StepFunction


def test_constants():
    assert ob.CG_CONSTANT == 69713280
    assert ob.tower_bound(2) == 2788531200 == 69713280 * 40
    assert ob.tower_bound(3) == 69713280 * 64
    with pytest.raises(ValueError):
        ob.cheeger_gromov_surgery_bound(2)
    with pytest.raises(ValueError):
        ob.tower_bound(1)


def test_rho_finite_cyclic_matches_oracle():
    jumps = [(Fraction(1, 9), 2), (Fraction(1, 5), -1), (Fraction(3, 7), 0)]
    K = kc.SpectralKnot(StepFunction([(Angle.from_turn(t), v) for t, v in jumps]), 0, "K")
    for d in (2, 3, 4, 8, 11, 13):
        assert ob.rho_finite_cyclic(K, d).value == roots_sum(jumps, d)


def test_rho_of_horn_knot():
    # theta_8 sits below 2pi/7, so every nontrivial 7th root sees the value 2
    assert ob.rho_finite_cyclic(kc.horn_knot(8), 7).value == 12


def test_rho_integral():
    r = ob.rho_integral(kc.horn_knot(1))
    # P_1 is 2 on (pi/3, pi]: average 2 * 2/3
    assert r.value == Fraction(4, 3) and not r.zero_proof
    S = kc.connected_sum(kc.horn_knot(8), kc.mirror(kc.horn_knot(8)))
    assert ob.rho_integral(S).zero_proof
    irr = ob.rho_integral(kc.horn_knot(2))
    lo, hi = irr.enclosure
    assert lo < hi and not irr.zero_proof


class _Item:
    def __init__(self, index, d, J0):
        self.index, self.d, self.J0 = index, d, J0


class _Family:
    def __init__(self, items, C):
        self.items, self.C = items, C


def test_certificate_logic():
    bump_1 = kc.SpectralKnot(StepFunction([(Angle.from_turn(Fraction(1, 8)), 5),
                                           (Angle.from_turn(Fraction(1, 6)), 0)]), 0, "a")
    bump_2 = kc.SpectralKnot(StepFunction([(Angle.from_turn(Fraction(3, 10)), 3),
                                           (Angle.from_turn(Fraction(7, 20)), 0)]), 0, "b")
    fam = _Family([_Item(1, 7, bump_1), _Item(2, 3, bump_2)], 8)
    c = ob.independence_certificate(fam, (1, 2))
    assert c.d == 7 and c.contributions == ((1, 10), (2, 0))
    assert c.margin == 2 and c.valid
    c2 = ob.independence_certificate(fam, (2,))
    assert c2.witness_sum == 6 and c2.margin == -2 and not c2.valid
    assert c.record()["valid"] is True and "valid: yes" in c.text()
    with pytest.raises(ValueError):
        ob.independence_certificate(fam, ())
    with pytest.raises(ValueError):
        ob.independence_certificate(fam, (3,))
