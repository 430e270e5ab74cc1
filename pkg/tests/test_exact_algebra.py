import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twotorsion import _poly as P
from twotorsion import exact_algebra as ea
from twotorsion.exact_algebra import AlgebraicReal, alg_compare


x = sympy.Symbol("x")


def _sympy_poly(coeffs):
    return sum(int(c) * x**i for i, c in enumerate(coeffs))


# -- polynomial helpers -----------------------------------------------------------

def test_poly_arith_roundtrip():
    p, q = (1, -2, 3), (0, 5)
    assert P.mul(p, q) == (0, 5, -10, 15)
    quo, r = P.divmod_(P.add(P.mul(p, q), (7,)), q)
    assert P.trim(quo) == P.trim(p) and P.trim(r) == (7,)


def test_chebyshev_matches_sympy():
    for n in range(8):
        ours = _sympy_poly(P.chebyshev_t(n))
        assert sympy.expand(ours - sympy.chebyshevt(n, x)) == 0


def test_isolation_counts_match_sympy_real_roots():
    rng = random.Random(3)
    for _ in range(40):
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(2, 6))]
        if not any(coeffs[1:]):
            continue
        p = P.squarefree(P.primitive(P.trim(coeffs)))
        if P.deg(p) < 1:
            continue
        ours = P.isolate_real_roots(p)
        theirs = sympy.Poly(_sympy_poly(p), x).real_roots()
        assert len(ours) == len(theirs)
        for (lo, hi), r in zip(ours, sorted(theirs, key=float)):
            assert lo < float(r) < hi or lo <= r <= hi


# -- constructors -----------------------------------------------------------------

def test_from_rational_examples():
    a = ea.alg_from_rational(Fraction(1, 2))
    assert a.poly == (-1, 2) and a.interval == (0, 1)
    z = ea.alg_from_rational(0)
    assert z.poly == (0, 1) and z.interval == (-1, 1)
    m = ea.alg_from_rational(-3)
    assert m.poly == (3, 1) and m.interval == (-4, -2)


@pytest.mark.parametrize("m,c", [(1, Fraction(1, 2)), (8, Fraction(3, 4)), (27, Fraction(5, 6)), (64, Fraction(7, 8))])
def test_cos_theta_cubes(m, c):
    a = ea.alg_cos_theta_m(m)
    assert a.is_rational and a.rational == c
    # the root of 8m(1-x)^3 - 1
    assert 8 * m * (1 - c) ** 3 - 1 == 0


def test_cos_theta_non_cube_is_horn_cubic():
    a = ea.alg_cos_theta_m(2)
    expected = sympy.Poly(sympy.expand(-(16 * (1 - x) ** 3 - 1)), x)
    assert sympy.Poly(_sympy_poly(a.poly), x) == expected
    assert math.isclose(float(a), 1 - 0.5 / 2 ** (1 / 3), rel_tol=1e-14)


def test_cos_two_pi_over_five():
    a = ea.alg_cos_rational_angle(1, 5)
    assert a.poly == (-1, 2, 4)
    assert math.isclose(float(a), math.cos(2 * math.pi / 5), rel_tol=1e-15)


def test_rational_angle_examples():
    assert ea.alg_cos_rational_angle(1, 2).rational == -1
    assert ea.alg_cos_rational_angle(1, 6).rational == Fraction(1, 2)


def test_compare_two_pi_seven_vs_theta8():
    assert alg_compare(ea.alg_cos_rational_angle(1, 7), ea.alg_cos_theta_m(8)) == ea.LESS


def test_cyclotomic_matches_sympy():
    for n in range(1, 40):
        assert sympy.Poly(_sympy_poly(ea.cyclotomic(n)), x) == sympy.Poly(sympy.cyclotomic_poly(n, x), x)


def test_cos_minimal_polynomial_degree_and_root():
    for n in range(3, 40):
        p = ea.cos_minimal_polynomial(n)
        assert P.deg(p) == sympy.totient(n) // 2
        assert sympy.Poly(_sympy_poly(p), x).is_irreducible
        assert abs(float(P.evaluate(p, Fraction(math.cos(2 * math.pi / n))))) < 1e-6 * max(map(abs, p))


def test_construction_rejects_non_isolating():
    with pytest.raises(ValueError):
        AlgebraicReal((-2, 0, 1), -3, 3)
    with pytest.raises(ValueError):
        AlgebraicReal((0, 1), 0, 1)


# -- comparison invariants -----------------------------------------------------------

def test_theta_cosines_increase():
    vals = [ea.alg_cos_theta_m(m) for m in range(1, 51)]
    for a, b in zip(vals, vals[1:]):
        assert alg_compare(a, b) == ea.LESS


def test_random_rational_angles_match_float():
    rng = random.Random(11)
    for _ in range(200):
        d = rng.randint(1, 60)
        r = rng.randint(0, d)
        a = ea.alg_cos_rational_angle(r, d)
        assert abs(float(a) - math.cos(2 * math.pi * r / d)) < 1e-12


def test_equal_values_from_different_routes():
    # cos(2pi/6) from the cyclotomic route vs the rational 1/2
    assert alg_compare(ea.alg_cos_rational_angle(2, 12), ea.alg_from_rational(Fraction(1, 2))) == ea.EQUAL
    # Chebyshev preimage of cos(2pi/5) under T_2 contains cos(pi/5) = cos(2pi*1/10)
    pre = ea.chebyshev_preimages(ea.alg_cos_rational_angle(1, 5), 2)
    assert any(alg_compare(p, ea.alg_cos_rational_angle(1, 10)) == ea.EQUAL for p in pre)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.integers(0, 30), st.integers(1, 30), st.integers(0, 30))
def test_trichotomy_and_antisymmetry(d1, r1, d2, r2):
    a, b = ea.alg_cos_rational_angle(r1 % (d1 + 1), d1), ea.alg_cos_rational_angle(r2 % (d2 + 1), d2)
    c = alg_compare(a, b)
    assert c in (ea.LESS, ea.EQUAL, ea.GREATER)
    assert alg_compare(b, a) == -c
    fa = math.cos(2 * math.pi * (r1 % (d1 + 1)) / d1)
    fb = math.cos(2 * math.pi * (r2 % (d2 + 1)) / d2)
    if abs(fa - fb) > 1e-9:
        assert c == (ea.LESS if fa < fb else ea.GREATER)
    else:
        assert c == ea.EQUAL


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_rational_between_separates(m1, m2):
    if m1 == m2:
        return
    a, b = ea.alg_cos_theta_m(min(m1, m2)), ea.alg_cos_theta_m(max(m1, m2))
    q = ea.rational_between(a, b)
    qa = ea.alg_from_rational(q)
    assert alg_compare(a, qa) == ea.LESS and alg_compare(qa, b) == ea.LESS


def test_chebyshev_preimages_map_back():
    c = ea.alg_cos_theta_m(3)
    for d in (2, 3, 5):
        pre = ea.chebyshev_preimages(c, d)
        assert len(pre) == d
        floats = [float(p) for p in pre]
        assert floats == sorted(floats, reverse=True)
        for p in floats:
            assert abs(math.cos(d * math.acos(p)) - float(c)) < 1e-12


def test_enclosure_contains_value():
    a = ea.alg_cos_theta_m(5)
    lo, hi = a.enclosure(60)
    exact = sympy.Poly(_sympy_poly(a.poly), x).real_roots()
    target = [r for r in exact if abs(float(r) - float(a)) < 1e-9][0]
    with mpmath.workdps(80):
        v = mpmath.mpf(str(sympy.N(target, 75)))
        assert lo <= v <= hi
        assert hi - lo < mpmath.mpf(10) ** -55
