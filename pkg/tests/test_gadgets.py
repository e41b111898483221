import pytest
from hypothesis import given, settings

from conftest import g_instances
from factorum.constraints import DegreeConstraint
from factorum.errors import UsageError
from factorum.gadgets import (
    build_interval_gadget,
    build_parity_gadget,
    gadget_for,
    matchgate,
    reduce_instance,
)
from factorum.instance import Instance, brute_force_opt, is_factor
from factorum.matching import max_weight_perfect_matching


def test_interval_gadget_shape():
    gb = build_interval_gadget(1, 2, 3)
    gb.check()
    assert gb.n_stubs == 3 and gb.n_internal == 3 + 2
    assert len(gb.optional) == 1
    assert gb.graph().m == 3 + 3 * 2


def test_parity_gadget_shape():
    gb = build_parity_gadget(0, 2, 3)
    gb.check()
    assert not gb.optional
    assert gb.kind == "parity"
    with pytest.raises(UsageError):
        build_parity_gadget(0, 1, 3)


def test_matchgate_and_dispatch():
    assert matchgate(1, 1, 3).constraint.feasible == (1, 2)
    assert gadget_for(DegreeConstraint.parity(1, 3, 3)).kind == "parity"
    with pytest.raises(UsageError):
        gadget_for(DegreeConstraint.of((0, 1, 3), 3))


def test_reduction_rejects_type_constraints():
    inst = Instance.build(4, [(0, 1), (0, 2), (0, 3)], [(0, 1, 3), (0, 1), (0, 1), (0, 1)])
    with pytest.raises(UsageError):
        reduce_instance(inst)


def test_composed_graph_has_even_order():
    inst = Instance.build(3, [(0, 1), (1, 2)], [(0, 1), (0, 1, 2), (1,)])
    for compact in (False, True):
        red = reduce_instance(inst, compact=compact)
        assert red.problem.graph.n % 2 == 0
        assert set(red.edge_map) == {0, 1}


@settings(max_examples=80, deadline=None)
@given(g_instances(max_n=6, max_m=8))
def test_reduction_preserves_optimum(inst):
    want = brute_force_opt(inst)
    for compact in (False, True):
        red = reduce_instance(inst, compact=compact)
        m = max_weight_perfect_matching(red.problem, certify=True)
        assert (m is None) == (want is None)
        if m is not None:
            f = red.lift(m, inst)
            assert is_factor(inst, f.edges) and f.weight == want.weight
            if not compact:
                # the weight edge is matched exactly when both stub edges are
                for e, (sx, sy) in red.stub_edges.items():
                    used = red.edge_map[e] in m.edges.members
                    assert used == (sx in m.edges.members) == (sy in m.edges.members)
