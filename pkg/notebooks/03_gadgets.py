"""
Matching gadgets and what they can realize
==========================================
"""

from factorum.constraints import DegreeConstraint, classify
from factorum.gadgets import build_interval_gadget, build_parity_gadget
from factorum.realizability import (
    constraint_family,
    feasible_family,
    is_delta_matroid,
    obstruction_check,
    partition_witness,
    realized_set,
)

gb = build_interval_gadget(1, 3, 4)
print(gb.n_vertices, "vertices", len(gb.edges), "edges", gb.n_stubs, "stubs")
print("realizes", realized_set(gb).feasible)

gb = build_parity_gadget(0, 4, 4)
print("parity gadget realizes", realized_set(gb).feasible)

# Feasible stub sets form a symmetric delta-matroid.
fam = feasible_family(gb)
print(len(fam), "feasible stub sets, delta-matroid:", is_delta_matroid(fam))

# Going from no stubs to all four splits into two stub pairs.
print(partition_witness(gb, 0, 0b1111))

# Every set with gaps at most one is a delta-matroid ...
for vals in [(0, 1, 3), (0, 2, 3), (1, 3, 5), (0, 3)]:
    c = DegreeConstraint.of(vals, 5)
    k = classify(c)
    dm = is_delta_matroid(constraint_family(c)) if k.max_gap <= 3 else None
    verdict = obstruction_check(c).value if k.max_gap <= 1 else "-"
    print(vals, "max gap", k.max_gap, "delta-matroid", dm, verdict)

# ... but mixing a gap with a step of one is what no gadget can do.
count = 0
for d in range(1, 9):
    for mask in range(1, 1 << (d + 1)):
        c = DegreeConstraint(d, mask)
        if classify(c).max_gap <= 1 and obstruction_check(c).value == "not-realizable":
            count += 1
print(count, "gap<=1 constraints of arity <= 8 flagged")
