import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from factorum.constraints import DegreeConstraint
from factorum.errors import CapacityError, PreconditionError, UsageError
from factorum.generate import trap_key, random_key_instance, small_admissible
from factorum.graph import EdgeSet
from factorum.instance import Instance, enumerate_factors, is_factor
from factorum.structure import (
    Shape,
    classify_basic,
    enumerate_basic_factors,
    even_at_u_candidates,
    find_even_at_u_basic_factor,
    find_positive_basic_factor,
    is_key_instance,
    lift_basic_subgraph,
    make_key_instance,
    normalize,
    vertex_type,
)


def key(n, edges, types=None, ws=None):
    return make_key_instance(n, edges, types or {}, ws or [1] * len(edges))


def theta(t0, t1, ws=None):
    # branch vertices 0 and 1 joined by three routes through 2, 3, 4
    return key(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)], {0: t0, 1: t1}, ws)


def es(k, ids):
    return EdgeSet(k.graph, frozenset(ids))


def test_key_instance_rules():
    assert is_key_instance(key(3, [(0, 1), (1, 2), (0, 2)]))
    claw = key(4, [(0, 1), (0, 2), (0, 3)], {0: 2})
    assert is_key_instance(claw) and vertex_type(claw, 0) == 2
    bad = Instance.build(2, [(0, 1)], [(0, 1), (0, 1)]).with_constraints({0: DegreeConstraint.of((1,), 1)})
    assert not is_key_instance(bad)
    two = Instance.build(3, [(0, 1), (1, 2)], [(0, 1), (0, 1), (0, 1)])
    assert not is_key_instance(two)


def test_shapes():
    path = key(3, [(0, 1), (1, 2)])
    assert classify_basic(path, path.graph.full()) is Shape.PATH
    tri = key(3, [(0, 1), (1, 2), (0, 2)])
    assert classify_basic(tri, tri.graph.full()) is Shape.CYCLE
    tad = key(4, [(0, 1), (1, 2), (0, 2), (2, 3)], {2: 1})
    assert classify_basic(tad, tad.graph.full()) is Shape.TADPOLE
    dumb = key(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)], {2: 1, 3: 1})
    assert classify_basic(dumb, dumb.graph.full()) is Shape.DUMBBELL
    assert classify_basic(theta(1, 2), theta(1, 2).graph.full()) is Shape.THETA
    assert classify_basic(theta(1, 1), theta(1, 1).graph.full()) is None
    with pytest.raises(UsageError):
        classify_basic(path, es(path, [0]))


def test_enumeration_small_counts():
    tri = key(3, [(0, 1), (1, 2), (0, 2)])
    assert [b.shape for b in enumerate_basic_factors(tri)] == [Shape.CYCLE]
    # a 5-edge path whose middle vertex 3 is type-1 with a pendant 3-6
    k = key(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], {3: 1})
    got = sorted(b.sorted() for b in enumerate_basic_factors(k))
    # vertex 3 takes one branch; using all three gives a tree, not a basic shape
    assert got == [(0, 1, 2), (3, 4), (5,)]


def test_enumeration_cap():
    big = key(21, [(i, i + 1) for i in range(20)] + [(0, 20)])
    with pytest.raises(CapacityError):
        list(enumerate_basic_factors(big))


def test_positive_cycle_is_itself():
    tri = key(3, [(0, 1), (1, 2), (0, 2)], ws=[1, 1, -1])
    assert find_positive_basic_factor(tri).shape is Shape.CYCLE


def test_dumbbell_with_negative_lobe():
    ws = [2, 2, 2, 1, -1, -1, -1]
    dumb = key(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)], {2: 1, 3: 1}, ws)
    bf = find_positive_basic_factor(dumb)
    basics = list(enumerate_basic_factors(dumb))
    assert bf.weight > 0 and any(b.edges == bf.edges for b in basics)
    # the positive lobe plus the bridge is a heavier tadpole
    assert any(b.shape is Shape.TADPOLE and b.weight == 7 for b in basics)


def test_positive_requires_positive_total():
    with pytest.raises(UsageError):
        find_positive_basic_factor(key(2, [(0, 1)], ws=[-1]))


def test_even_at_u_avoids_u():
    # two positive triangles and a negative pendant 2-6 at a type-2 vertex
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 6)]
    k = key(7, edges, {2: 2}, [1, 1, 1, 1, 1, 1, -1])
    bf = find_even_at_u_basic_factor(k, 6)
    assert bf.shape is Shape.CYCLE and bf.weight == 3 and 6 not in bf.edges.vertices()


def test_even_at_u_hypotheses():
    k = key(3, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        find_even_at_u_basic_factor(k, 1)  # degree 2
    with pytest.raises(PreconditionError):
        find_even_at_u_basic_factor(k, 0)  # the whole graph is itself basic


def test_trap_negative_control():
    k, u = trap_key()
    assert k.m == 14 and sum(k.weights) == 6
    basics = list(enumerate_basic_factors(k))
    assert max(b.weight for b in basics) < 6
    assert even_at_u_candidates(k, u) == []
    with pytest.raises(PreconditionError):
        find_even_at_u_basic_factor(k, u)
    k2, _ = trap_key(u_type=2)
    assert find_even_at_u_basic_factor(k2, u).weight > 0


def test_normalize_simple_cycle():
    inst = Instance.build(3, [(0, 1), (1, 2), (0, 2)], [(0, 2)] * 3, [1, 2, 3])
    nr = normalize(inst, inst.factor([]), inst.factor([0, 1, 2]))
    assert nr.key.n == 3 and list(nr.key.weights) == [1, 2, 3]
    assert is_key_instance(nr.key)


def test_normalize_separation():
    # vertex 1 swaps edge 0 for edge 1; the pair moves to a fresh {0,2} vertex
    inst = Instance.build(3, [(0, 1), (1, 2)], [(0, 1), (1,), (0, 1)], [1, 5])
    nr = normalize(inst, inst.factor([0]), inst.factor([1]))
    assert list(nr.key.weights) == [-1, 5]
    assert [nr.key.graph.degree(x) for x in nr.expansion[1]] == [2]
    bf = find_positive_basic_factor(nr.key)
    h = lift_basic_subgraph(nr, bf)
    assert h.sorted() == (0, 1)


def test_normalize_needs_factors():
    inst = Instance.build(2, [(0, 1)], [(1,), (1,)])
    with pytest.raises(UsageError):
        normalize(inst, inst.graph.empty(), inst.graph.full())


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_normalize_find_lift_pipeline(seed):
    rng = random.Random(seed)
    inst = small_admissible(rng, max_n=8, max_m=12)
    fs = list(enumerate_factors(inst))
    if len(fs) < 2:
        return
    a, b = rng.sample(fs, 2)
    f, g = inst.factor(a), inst.factor(b)
    if f.weight > g.weight:
        f, g = g, f
    nr = normalize(inst, f, g)
    assert is_key_instance(nr.key)
    assert sum(nr.key.weights, Fraction(0)) == g.weight - f.weight
    if g.weight > f.weight:
        bf = find_positive_basic_factor(nr.key)
        h = lift_basic_subgraph(nr, bf)
        assert is_factor(inst, f.edges ^ h)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_keys(seed):
    rng = random.Random(seed)
    k = random_key_instance(rng, rng.randint(3, 10))
    assert is_key_instance(k)
    if k.m == 0 or sum(k.weights) <= 0:
        return
    bf = find_positive_basic_factor(k)
    assert bf.weight > 0
    assert any(b.edges == bf.edges for b in enumerate_basic_factors(k))
