import pytest
from hypothesis import given, settings

from conftest import g_instances, seeded_instances
from factorum.errors import CapacityError, UsageError
from factorum.generate import scaling_instance
from factorum.instance import Instance, brute_force_opt, t_set
from factorum.oracles import (
    OracleHandle,
    decision_split_backend,
    opt_brute_backend,
    opt_matching_backend,
    split_instances,
)


def claw(center):
    return Instance.build(4, [(0, 1), (0, 2), (0, 3)], [center, (0, 1), (0, 1), (1,)], [1, 1, 1])


def test_optimization_needs_g_constraints():
    with pytest.raises(UsageError):
        opt_matching_backend(claw((0, 1, 3)))


def test_split_order():
    subs = list(split_instances(claw((0, 1, 3))))
    assert [s.constraints[0].feasible for s in subs] == [(1, 3), (0,)]


def test_decision_finds_a_factor_or_none():
    f = decision_split_backend(claw((0, 1, 3)))
    assert f is not None
    # leaf 3 is forced, so the centre needs degree 2 or 3
    f = decision_split_backend(claw((0, 2, 3)), cap=5)
    assert f is not None and f.degree(0) in (2, 3)


def test_decision_cap():
    inst = scaling_instance(0, 40)
    with pytest.raises(CapacityError):
        decision_split_backend(inst, cap=len(t_set(inst)) - 1)


def test_handle_counts_and_memo():
    h = OracleHandle()
    inst = claw((1,))
    a = h.optimization(inst)
    b = h.optimization(inst)
    assert a == b and h.opt_calls == 2 and len(h._memo) == 1
    h.decision(claw((0, 1, 3)))
    assert h.dec_calls == 1 and h.inner_opt_calls >= 1
    h.reset()
    assert (h.dec_calls, h.opt_calls, h.inner_opt_calls) == (0, 0, 0)


def test_named_handles():
    assert OracleHandle.named("brute").optimization_backend == "brute"
    with pytest.raises(UsageError):
        OracleHandle.named("nope")
    with pytest.raises(UsageError):
        OracleHandle(optimization_backend="nope")


@settings(max_examples=80, deadline=None)
@given(g_instances(max_n=7, max_m=10))
def test_matching_backend_agrees_with_brute_force(inst):
    a, b = opt_matching_backend(inst, certify=True), opt_brute_backend(inst)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.weight == b.weight


@settings(max_examples=80, deadline=None)
@given(seeded_instances(max_n=7, max_m=10))
def test_decision_agrees_with_feasibility(inst):
    assert (decision_split_backend(inst) is None) == (brute_force_opt(inst) is None)
