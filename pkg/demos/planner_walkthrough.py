"""Walk through a small family plan and its certificates."""
import itertools

from twotorsion import infection as inf
from twotorsion import obstruct as ob
from twotorsion import planner as pl

print("bound for n=2:", ob.tower_bound(2))
print("parameters:", pl.select_parameters(5))

plan = pl.plan_family(2, 5, pl.STRICT_HALF, abort=False)
for it in plan.items:
    req = [c for c in it.checks if c.required]
    print(f"item {it.index}: m={it.m_lo}..{it.m_hi} d={it.d} N={it.N} "
          f"{sum(c.passed for c in req)}/{len(req)} required checks")

# checks that are recorded but not required
for it in plan.items:
    for c in it.checks:
        if not c.required and not c.passed:
            print("  note:", c.line())

tower = inf.build_tower(2, plan.items[0].J0)
print(inf.tower_text(tower))
print("tags:", {k: v.value for k, v in inf.tags_of_tower(tower).items()})
print("crossings:", inf.crossing_budget(tower))

margins = {s: ob.independence_certificate(plan, s).margin
           for k in range(1, 6) for s in itertools.combinations(range(1, 6), k)}
print("subsets certified:", sum(m > 0 for m in margins.values()), "of", len(margins))
print(ob.independence_certificate(plan, (2, 4, 5)).text())
