"""Hypothesis strategies shared by the step-function tests."""
from fractions import Fraction

from hypothesis import strategies as st

from twotorsion.exact_algebra import alg_cos_theta_m
from twotorsion.stepfn import Angle, StepFunction

HALF = Fraction(1, 2)

turns = st.builds(Fraction, st.integers(1, 120), st.integers(2, 241)).filter(lambda t: 0 < t < HALF)


@st.composite
def rational_jumps(draw, max_jumps: int = 5):
    """Sorted [(turn, value_after)] with distinct turns in (0, 1/2)."""
    ts = sorted(set(draw(st.lists(turns, min_size=0, max_size=max_jumps))))
    vals = draw(st.lists(st.integers(-6, 6), min_size=len(ts), max_size=len(ts)))
    return list(zip(ts, vals))


def to_step(jumps) -> StepFunction:
    return StepFunction([(Angle.from_turn(t), v) for t, v in jumps])


@st.composite
def step_functions(draw, max_jumps: int = 4, horn: bool = True):
    """Mix of rational jumps and Horn angles theta_m."""
    jumps = draw(rational_jumps(max_jumps))
    items = [(Angle.from_turn(t), v) for t, v in jumps]
    if horn:
        ms = sorted(set(draw(st.lists(st.integers(2, 40), max_size=2))))
        for m in ms:
            a = Angle.from_cos(alg_cos_theta_m(m))
            if all(a != b for b, _ in items):
                items.append((a, draw(st.integers(-4, 4))))
    return StepFunction(items)


def seifert_2x2(a: int, b: int, c: int) -> list[list[int]]:
    """[[a, b], [b - 1, c]] always has A - A^T unimodular."""
    return [[a, b], [b - 1, c]]


def seifert_4x4(sym: list[list[int]]) -> list[list[int]]:
    """Symmetric 4x4 part plus the standard [[0, I], [0, 0]] block."""
    A = [[sym[min(i, j)][max(i, j)] for j in range(4)] for i in range(4)]
    A[0][2] += 1
    A[1][3] += 1
    return A


small = st.integers(-3, 3)
matrices_2x2 = st.builds(seifert_2x2, small, small, small)
matrices_4x4 = st.builds(seifert_4x4, st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
