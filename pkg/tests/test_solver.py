import random

import pytest
from hypothesis import given, settings

from conftest import seeded_instances
from factorum.errors import UsageError
from factorum.generate import trap_key, scaling_instance, small_admissible
from factorum.instance import Instance, brute_force_opt, enumerate_factors, restrict_parity, t_set
from factorum.oracles import OracleHandle
from factorum.solver import SolveStats, check_optimality_criterion, improvement_loop, main_solve


def test_trap_instance_takes_every_edge():
    key, _ = trap_key()
    res = main_solve(key, trace=True)
    assert res.weight == 6 and len(res.outcome.edges) == key.m
    assert res.trace[-1].branch == "improve"
    assert not res.stats.violations(key.n)


def test_odd_branch_when_even_side_infeasible():
    # the leaves are forced, so the centre has degree 3, the lone value of
    # the second half of {0,2,3}
    inst = Instance.build(4, [(0, 1), (0, 2), (0, 3)], [(0, 2, 3), (1,), (1,), (1,)], [1, 2, 3])
    res = main_solve(inst, trace=True)
    assert res.weight == 6
    assert [t.branch for t in res.trace] == ["odd", "opt"]


def test_infeasible_gives_none():
    tri = Instance.build(3, [(0, 1), (1, 2), (0, 2)], [(1,)] * 3)
    res = main_solve(tri)
    assert not res.feasible and res.weight is None


def test_rejects_inadmissible():
    inst = Instance.build(4, [(0, 1), (0, 2), (0, 3)], [(0, 3), (0, 1), (0, 1), (0, 1)])
    with pytest.raises(UsageError):
        main_solve(inst)


def test_bounds_formula():
    assert SolveStats().bounds(4) == {"dec_calls": 4, "opt_calls": 11, "comparisons": 10, "recursion_depth": 4}
    assert SolveStats(dec_calls=5).violations(4) == ["dec_calls=5 exceeds 4"]


def test_improvement_loop_reaches_optimum():
    key, u = trap_key()
    even = restrict_parity(key, u, 0)
    f = brute_force_opt(even)
    assert improvement_loop(key, u, f).weight == brute_force_opt(key).weight


def test_scaling_instance_respects_bounds():
    inst = scaling_instance(3, 20)
    assert len(t_set(inst)) == 5
    res = main_solve(inst)
    assert res.stats.dec_calls <= 20 and res.stats.recursion_depth <= 20


@settings(max_examples=120, deadline=None)
@given(seeded_instances(max_n=8, max_m=12))
def test_main_solve_matches_brute_force(inst):
    res = main_solve(inst)
    want = brute_force_opt(inst)
    assert (res.outcome is None) == (want is None)
    if want is not None:
        assert res.weight == want.weight


@settings(max_examples=40, deadline=None)
@given(seeded_instances(max_n=7, max_m=9))
def test_brute_oracles_give_same_answer(inst):
    a = main_solve(inst, OracleHandle.named("brute"))
    b = main_solve(inst, OracleHandle.named("matching"))
    assert a.weight == b.weight


def test_optimality_criterion_on_random_instances():
    rng = random.Random(11)
    done = 0
    while done < 30:
        inst = small_admissible(rng, max_n=7, max_m=9)
        tt = t_set(inst)
        if not tt:
            continue
        u = tt[0]
        f = brute_force_opt(restrict_parity(inst, u, 0))
        if f is None:
            continue
        done += 1
        best = brute_force_opt(inst).weight
        for ids in enumerate_factors(inst):
            cand = inst.factor(ids)
            assert check_optimality_criterion(inst, u, f, cand) == (cand.weight == best)
