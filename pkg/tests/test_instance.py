import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import seeded_instances
from factorum.constraints import DegreeConstraint
from factorum.errors import UsageError
from factorum.instance import (
    Instance,
    brute_force_opt,
    enumerate_factors,
    is_factor,
    restrict_parity,
    slice_instance,
    t_odd,
    t_set,
    to_fraction,
    validate,
    violating_vertices,
)


def path3():
    # vertex 2 must be covered and vertex 1 takes both edges or none
    return Instance.build(3, [(0, 1), (1, 2)], [(0, 1), (0, 2), (1,)], [2, -1])


def test_fraction_conversion():
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction("3/4") == Fraction(3, 4)


def test_build_and_weights():
    inst = path3()
    assert inst.n == 3 and inst.m == 2
    assert inst.weight_of([0, 1]) == 1
    assert inst.factor([0, 1]).weight == 1
    with pytest.raises(UsageError):
        inst.factor([1])


def test_validation_reports():
    g_bad = Instance.build(2, [(0, 1)], [DegreeConstraint.of((0,), 2), (1,)])
    rep = validate(g_bad)
    assert not rep.ok
    wide = Instance.build(3, [(0, 1), (0, 2), (1, 2)], [(0, 2), (0, 2), (0, 2)])
    assert validate(wide).admissible
    k4 = Instance.build(4, list(itertools.combinations(range(4), 2)), [(0, 3)] * 4)
    rep = validate(k4)
    assert rep.ok and not rep.admissible and not rep.brute_force_ok


def test_factor_checks():
    inst = path3()
    assert is_factor(inst, [0, 1])
    assert not is_factor(inst, [1])
    assert violating_vertices(inst, [0]) == [1, 2]


def test_brute_force_on_forced_instance():
    inst = path3()
    f = brute_force_opt(inst)
    assert f.sorted() == (0, 1) and f.weight == 1
    assert sorted(enumerate_factors(inst)) == [(0, 1)]


def test_brute_force_none_when_infeasible():
    tri = Instance.build(3, [(0, 1), (1, 2), (0, 2)], [(1,)] * 3)
    assert brute_force_opt(tri) is None


def _claw():
    # centre 0 of degree 3 with type-2 {0,2,3}
    return Instance.build(4, [(0, 1), (0, 2), (0, 3)], [(0, 2, 3), (0, 1), (0, 1), (0, 1)], [1, 1, -1])


def test_restrict_parity_and_slices():
    inst = _claw()
    assert t_set(inst) == [0]
    assert restrict_parity(inst, 0, 0).constraints[0].feasible == (0, 2)
    assert restrict_parity(inst, 0, 1).constraints[0].feasible == (3,)
    f = inst.factor([0, 1])
    same = slice_instance(inst, f, [])
    flip = slice_instance(inst, f, [0])
    assert same.constraints[0].feasible == (0, 2)
    assert flip.constraints[0].feasible == (3,)
    with pytest.raises(UsageError):
        slice_instance(inst, f, [1])
    with pytest.raises(UsageError):
        restrict_parity(inst, 1, 0)


def test_t_odd():
    inst = _claw()
    assert t_odd(inst, inst.factor([0, 1]), inst.factor([0, 1, 2])) == [0]
    assert t_odd(inst, inst.factor([0, 1]), inst.factor([])) == []


@settings(max_examples=60, deadline=None)
@given(seeded_instances(max_n=6, max_m=8))
def test_brute_force_matches_enumeration(inst):
    fs = list(enumerate_factors(inst))
    best = brute_force_opt(inst)
    if not fs:
        assert best is None
        return
    top = max(inst.weight_of(f) for f in fs)
    assert best.weight == top
    # ties resolve to the lexicographically smallest edge tuple
    assert best.sorted() == min(f for f in fs if inst.weight_of(f) == top)
    assert all(is_factor(inst, f) for f in fs)
