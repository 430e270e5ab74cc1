"""Constructive family planner with exhaustive exact verification.

Item ``i`` uses Horn knots ``P_lo``, ``P_hi`` and a prime ``d`` with
``2pi/theta_lo < d < 2pi/theta_hi``:

    S  = -P_lo # P_hi           (signature 2 on the arc (theta_hi, theta_lo))
    J' = S # -(d,1)-cable(S)
    J0 = N copies of J'

All interval and evaluation claims are decided with exact cosine comparisons
and certified step-function evaluation in strict (off-jump) mode.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import exact_algebra as ea
from . import infection as inf
from . import knotcalc as kc
from . import obstruct as ob
from .stepfn import STRICT, Angle, JumpCollision, sf_average, sf_evaluate

__all__ = [
    "STRICT_HALF",
    "FIGURE_ONE",
    "Check",
    "PlanItem",
    "FamilyPlan",
    "Construction",
    "PlanVerificationError",
    "select_parameters",
    "copies_for",
    "build_j0",
    "make_item",
    "verify_item",
    "cross_checks",
    "plan_family",
    "full_construction",
]

STRICT_HALF = "strict_half"
FIGURE_ONE = "figure_one"
STEP_CAP = 10**6

GROPE_J0 = ("connected sums and (d,1)-cables of knots bounding height 2 gropes bound height 2 gropes; "
            "each P_m bounds one (Horn)")
SOLVABLE_J0 = "Arf invariant 0 (computed) is equivalent to (0)-solvability"


class PlanVerificationError(RuntimeError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True
    witness: tuple | None = None

    def line(self) -> str:
        flag = "PASS" if self.passed else ("FAIL" if self.required else "NOTE")
        return f"{flag} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True, eq=False)
class PlanItem:
    index: int
    m_lo: int
    m_hi: int
    d: int
    N: int
    S: kc.SpectralKnot
    Jprime: kc.SpectralKnot
    J0: kc.SpectralKnot
    checks: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def record(self) -> dict:
        return {"index": self.index, "m_lo": self.m_lo, "m_hi": self.m_hi, "d": self.d, "N": self.N,
                "checks": [{"name": c.name, "passed": c.passed, "required": c.required, "detail": c.detail}
                           for c in self.checks]}


@dataclass(frozen=True, eq=False)
class FamilyPlan:
    n: int
    C: int
    convention: str
    items: tuple
    cross: tuple = ()
    start_m: int = 1

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items) and all(c.passed for c in self.cross if c.required)

    def failures(self) -> list[Check]:
        out = [c for it in self.items for c in it.checks if c.required and not c.passed]
        return out + [c for c in self.cross if c.required and not c.passed]

    def record(self) -> dict:
        return {"n": self.n, "C": self.C, "convention": self.convention, "start_m": self.start_m,
                "count": len(self.items), "items": [it.record() for it in self.items],
                "cross_checks": [{"name": c.name, "passed": c.passed, "required": c.required,
                                  "detail": c.detail} for c in self.cross]}


# -- parameter selection -------------------------------------------------------------------

def _cos_turn(d: int, k: int = 1) -> ea.AlgebraicReal:
    return ea.alg_cos_rational_angle(k, d)


def _in_interval(d: int, m_lo: int, m_hi: int) -> bool:
    """2pi/theta_lo < d < 2pi/theta_hi, i.e. cos(theta_lo) < cos(2pi/d) < cos(theta_hi)."""
    c = _cos_turn(d)
    return ea.alg_compare(ea.alg_cos_theta_m(m_lo), c) == ea.LESS and \
        ea.alg_compare(c, ea.alg_cos_theta_m(m_hi)) == ea.LESS


def _narrow(d: int, m_lo: int) -> bool:
    """d < 4pi/theta_lo, i.e. 2*(2pi/d) > theta_lo."""
    if d <= 4:
        return True
    return ea.alg_compare(_cos_turn(d, 2), ea.alg_cos_theta_m(m_lo)) == ea.LESS


def _two_pi_over_theta(m: int) -> float:
    return 2 * math.pi / math.acos(float(ea.alg_cos_theta_m(m)))


def _next_cube(m: int) -> int:
    k = round(m ** (1 / 3))
    while k**3 <= m:
        k += 1
    while k > 1 and (k - 1) ** 3 > m:
        k -= 1
    return k**3


def _prime_in(m_lo: int, m_hi: int) -> int | None:
    lo, hi = _two_pi_over_theta(m_lo), _two_pi_over_theta(m_hi)
    for d in range(max(2, int(lo) - 1), int(hi) + 2):
        if sympy.isprime(d) and _in_interval(d, m_lo, m_hi):
            return d
    return None


def select_parameters(count: int, start_m: int = 1, step: str = "cube") -> list[tuple[int, int, int]]:
    """Greedy chain of (m_lo, m_hi, d); m_hi advances through cubes (or all integers)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if start_m < 1:
        raise ValueError("start_m must be positive")
    if step not in ("cube", "integer"):
        raise ValueError("step must be 'cube' or 'integer'")
    out = []
    m_lo = start_m
    for _ in range(count):
        m_hi = m_lo
        for _tries in range(STEP_CAP):
            m_hi = _next_cube(m_hi) if step == "cube" else m_hi + 1
            d = _prime_in(m_lo, m_hi)
            if d is not None and _narrow(d, m_lo):
                out.append((m_lo, m_hi, d))
                break
        else:
            raise RuntimeError(f"no admissible prime found after m_lo={m_lo} within {STEP_CAP} steps")
        m_lo = m_hi
    return out


# -- construction ------------------------------------------------------------------------------

def copies_for(C: int, convention: str) -> int:
    if convention == STRICT_HALF:
        return C // 2 + 1
    if convention == FIGURE_ONE:
        return C
    raise ValueError(f"unknown convention {convention!r}")


def build_j0(m_lo: int, m_hi: int, d: int, N: int):
    """(S, J', J0) for one item."""
    S = kc.connected_sum(kc.mirror(kc.horn_knot(m_lo)), kc.horn_knot(m_hi), name=f"S(-P_{m_lo} # P_{m_hi})")
    cable = kc.cable_d1(S, d)
    Jp = kc.connected_sum(S, kc.mirror(cable), name=f"J'(m={m_lo},{m_hi}; d={d})")
    J0 = kc.copies(Jp, N, name=f"J0(m={m_lo},{m_hi}; d={d}; N={N})")
    tags = frozenset({kc.grope_height(2, GROPE_J0)} | ({kc.solvable(0, SOLVABLE_J0)} if J0.arf == 0 else set()))
    J0 = kc.SpectralKnot(J0.sigma, J0.arf, J0.name, tags, J0.parts, J0.notes, J0.multiplicity)
    return S, Jp, J0


def _eval(K, r: int, d: int):
    return sf_evaluate(K.sigma, Angle.from_turn(Fraction(r, d)), STRICT)


def make_item(index: int, m_lo: int, m_hi: int, d: int, C: int, convention: str) -> PlanItem:
    N = copies_for(C, convention)
    S, Jp, J0 = build_j0(m_lo, m_hi, d, N)
    return PlanItem(index, m_lo, m_hi, d, N, S, Jp, J0)


def verify_item(item: PlanItem, C: int, family_so_far=()) -> list[Check]:
    """Checks for one item; cross checks against earlier items in both directions."""
    d, out = item.d, []
    out.append(Check("interval", _in_interval(d, item.m_lo, item.m_hi),
                     f"cos theta_{item.m_lo} < cos(2pi/{d}) < cos theta_{item.m_hi}"))
    out.append(Check("narrowness", _narrow(d, item.m_lo), f"cos(4pi/{d}) < cos theta_{item.m_lo}"))
    out.append(Check("prime", bool(sympy.isprime(d)), f"d = {d}"))
    try:
        v1, vm1 = _eval(item.J0, 1, d), _eval(item.J0, d - 1, d)
        ok = v1 == vm1 == 2 * item.N and v1 > C
        out.append(Check("(2a) sigma(w^+-1) > C", ok, f"sigma = {v1}, C = {C}", witness=(1, d, v1)))
        bad = [(r, d, v) for r in range(2, d - 1) if (v := _eval(item.J0, r, d)) != 0]
        out.append(Check("(2b) sigma(w^r) = 0 for r != +-1", not bad,
                         "all zero" if not bad else f"nonzero at (r, d, value) = {bad[0]}",
                         witness=bad[0] if bad else None))
        off_jump = True
    except JumpCollision as e:
        off_jump = False
        out.append(Check("off-jump", False, str(e)))
    if off_jump:
        out.append(Check("off-jump", True, f"all {d}-th roots avoid every jump"))
    out.append(Check("(4) Arf = 0", item.J0.arf == 0, f"arf = {item.J0.arf} ({kc.CABLE_ARF_NOTE})"))
    avg = sf_average(item.J0.sigma)
    out.append(Check("(4) integral = 0", avg.is_exact_zero, "symbolic cancellation" if avg.is_exact_zero else str(avg)))
    out.append(Check("(1) grope height 2", True, "cited: " + GROPE_J0))
    for earlier in family_so_far:
        out.extend(cross_checks(earlier, item))
    return out


def _vanishes_at(K, d: int) -> tuple[bool, tuple | None]:
    for r in range(1, d):
        v = _eval(K, r, d)
        if v != 0:
            return False, (r, d, v)
    return True, None


def cross_checks(earlier: PlanItem, later: PlanItem) -> list[Check]:
    """Condition (3) between an earlier and a later item.

    The obstruction argument needs the later knot to vanish at the earlier
    item's roots (required). The reverse direction is recorded as well but
    does not abort the plan.
    """
    i, j = earlier.index, later.index
    ok, wit = _vanishes_at(later.J0, earlier.d)
    proof_dir = Check(f"(3) sigma_J0_{j} = 0 at d_{i}={earlier.d} roots", ok,
                      "all zero" if ok else f"nonzero at (r, d, value) = {wit}", True, wit)
    ok2, wit2 = _vanishes_at(earlier.J0, later.d)
    stated_dir = Check(f"(3') sigma_J0_{i} = 0 at d_{j}={later.d} roots", ok2,
                       "all zero" if ok2 else f"nonzero at (r, d, value) = {wit2}", False, wit2)
    return [proof_dir, stated_dir]


def plan_family(n: int, count: int, convention: str = STRICT_HALF, start_m: int = 1,
                params=None, abort: bool = True) -> FamilyPlan:
    C = ob.tower_bound(n)
    params = params if params is not None else select_parameters(count, start_m)
    items = []
    for k, (m_lo, m_hi, d) in enumerate(params, start=1):
        it = make_item(k, m_lo, m_hi, d, C, convention)
        checks = tuple(verify_item(it, C, items))
        it = PlanItem(it.index, it.m_lo, it.m_hi, it.d, it.N, it.S, it.Jprime, it.J0, checks)
        if abort and not it.passed:
            bad = next(c for c in checks if c.required and not c.passed)
            raise PlanVerificationError(f"item {k}: {bad.line()}", bad.witness)
        items.append(it)
    return FamilyPlan(n, C, convention, tuple(items), start_m=start_m)


def both_direction_report(plan: FamilyPlan) -> list[Check]:
    """Every J0 evaluated at every other item's roots."""
    out = []
    for a in plan.items:
        for b in plan.items:
            if a.index != b.index:
                ok, wit = _vanishes_at(b.J0, a.d)
                out.append(Check(f"sigma_J0_{b.index} = 0 at d_{a.index}={a.d} roots", ok,
                                 "all zero" if ok else f"nonzero at (r, d, value) = {wit}", True, wit))
    return out


@dataclass(frozen=True, eq=False)
class Construction:
    plan: FamilyPlan
    towers: tuple
    tower_tags: tuple
    crossing_budgets: tuple
    certificates: tuple


def full_construction(n: int, count: int, convention: str = STRICT_HALF, start_m: int = 1,
                      subsets=(), abort: bool = True) -> Construction:
    if n < 2:
        raise ValueError("tower depth n must be at least 2")
    plan = plan_family(n, count, convention, start_m, abort=abort)
    towers = tuple(inf.build_tower(n, it.J0) for it in plan.items)
    tags = tuple(inf.tags_of_tower(t) for t in towers)
    budgets = tuple(inf.crossing_budget(t) for t in towers)
    for b in budgets:
        if ob.cheeger_gromov_surgery_bound(b) != plan.C:
            raise AssertionError("crossing budget disagrees with the bound")
    wanted = [(it.index,) for it in plan.items] + [tuple(s) for s in subsets]
    certs = tuple(ob.independence_certificate(plan, s) for s in wanted)
    return Construction(plan, towers, tags, budgets, certs)


def plan_to_json(plan: FamilyPlan) -> str:
    return json.dumps(plan.record(), sort_keys=True, indent=2)


def plan_from_record(rec: dict) -> FamilyPlan:
    """Rebuild (and re-verify) a plan from its stored parameters."""
    params = [(it["m_lo"], it["m_hi"], it["d"]) for it in rec["items"]]
    return plan_family(int(rec["n"]), len(params), rec["convention"], int(rec.get("start_m", 1)),
                       params=params, abort=False)
