import random

import pytest

from factorum.constraints import classify
from factorum.errors import UsageError
from factorum.generate import (
    trap_key,
    random_constraint,
    random_instance,
    random_key_instance,
    scaling_instance,
)
from factorum.instance import t_set, validate
from factorum.structure import is_key_instance


def test_determinism():
    assert random_instance(5, 6, 9) == random_instance(5, 6, 9)
    assert random_instance(5, 6, 9) != random_instance(6, 6, 9)


def test_generated_instances_validate():
    for seed in range(1000):
        inst = random_instance(seed, 7, 10)
        assert validate(inst).admissible


def test_type_classes_only():
    for seed in range(200):
        inst = random_instance(seed, 7, 12, classes=("type1", "type2"))
        for v in range(inst.n):
            if inst.graph.degree(v) >= 3:
                assert classify(inst.constraints[v]).in_t


def test_constraint_fallback_for_low_degree():
    c = random_constraint(random.Random(0), 2, ("type1",))
    assert classify(c).is_interval


def test_parameter_errors():
    with pytest.raises(UsageError):
        random_instance(0, 3, 4)
    with pytest.raises(UsageError):
        random_instance(0, 3, 2, classes=("nope",))
    with pytest.raises(UsageError):
        scaling_instance(0, 4)


def test_scaling_family_shape():
    for n in (20, 40, 80):
        inst = scaling_instance(n, n)
        assert len(t_set(inst)) == n // 4
        assert inst.graph.max_degree() <= 3
        assert all(0 in c for c in inst.constraints)


def test_key_generators():
    k, u = trap_key()
    assert is_key_instance(k) and k.n == 12 and u == 0
    for seed in range(50):
        assert is_key_instance(random_key_instance(seed, 9))
