"""
Solving a small mixed instance by hand
======================================

Build an instance with one vertex of each constraint class, solve it with
the recursive driver, and compare against plain enumeration.
"""

import random
from fractions import Fraction

from factorum.constraints import DegreeConstraint, classify
from factorum.formats import format_factor, format_instance
from factorum.generate import small_admissible
from factorum.instance import Instance, brute_force_opt, t_set
from factorum.oracles import OracleHandle
from factorum.solver import main_solve

# K4 plus a pendant edge.  Vertex 0 is type-1, vertex 1 type-2.
edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]
weights = [Fraction(3), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(2), Fraction(-3), Fraction(1)]
cons = [
    DegreeConstraint.of((0, 1, 3), 3),
    DegreeConstraint.of((0, 2, 3), 3),
    DegreeConstraint.interval(1, 2, 3),
    DegreeConstraint.parity(0, 2, 4),
    DegreeConstraint.of((0, 1), 1),
]
inst = Instance.build(5, edges, cons, weights)
print(format_instance(inst))
for v, c in enumerate(cons):
    k = classify(c)
    print(v, c.feasible, "type-1" if k.is_type1 else "type-2" if k.is_type2 else "matching-realizable")

# The driver branches only on the type-1/type-2 vertices.
print("T =", t_set(inst))

res = main_solve(inst, trace=True)
print(format_factor(res.outcome, inst))
print(res.stats)
for ev in res.trace:
    print("  " * ev.level, ev.branch, "u=%s" % ev.u, ev.weight)

assert res.weight == brute_force_opt(inst).weight

# Same answer with the exhaustive oracles plugged in instead of matching.
brute = main_solve(inst, OracleHandle.named("brute"))
print("brute-oracle weight:", brute.weight)

# A quick sweep: how often does the driver reach the counting bounds?
ratios = []
for seed in range(200):
    x = small_admissible(random.Random(seed), max_n=10, max_m=16)
    st = main_solve(x).stats
    ratios.append(st.dec_calls / max(1, x.n))
print("max dec_calls / n over 200 instances: %.2f" % max(ratios))
