import pytest
from hypothesis import given, strategies as st

from factorum.constraints import (
    DegreeConstraint,
    classify,
    complement_within,
    format_constraint,
    gaps,
    max_parity_subset,
    parse_constraint,
    split,
)
from factorum.errors import UsageError


def test_families():
    assert classify(DegreeConstraint.interval(1, 3, 4)).is_interval
    assert classify(DegreeConstraint.parity(0, 4, 4)).is_parity_interval
    t1 = classify(DegreeConstraint.of((2, 3, 5), 6))
    assert t1.is_type1 and t1.in_t and not t1.in_g
    t2 = classify(DegreeConstraint.of((0, 2, 3), 3))
    assert t2.is_type2 and t2.admissible
    assert not classify(DegreeConstraint.of((0, 3), 3)).admissible
    assert classify(DegreeConstraint.of((0, 3), 3)).max_gap == 2


def test_singleton_is_both_interval_and_parity():
    c = classify(DegreeConstraint.of((2,), 3))
    assert c.is_interval and c.is_parity_interval


def test_gaps():
    assert gaps(DegreeConstraint.of((0, 1, 3, 6), 6)) == [1, 2]


def test_split_halves():
    d0, d1 = split(DegreeConstraint.of((1, 2, 4), 5))
    assert d0.feasible == (2, 4) and d1.feasible == (1,)
    d0, d1 = split(DegreeConstraint.of((1, 3, 4), 5))
    assert d0.feasible == (1, 3) and d1.feasible == (4,)
    with pytest.raises(UsageError):
        split(DegreeConstraint.interval(0, 2, 2))


def test_parity_subset_and_complement():
    d = DegreeConstraint.of((0, 1, 3), 3)
    df = max_parity_subset(d, 3)
    assert df.feasible == (1, 3)
    assert complement_within(d, df).feasible == (0,)
    with pytest.raises(UsageError):
        max_parity_subset(d, 2)
    with pytest.raises(UsageError):
        complement_within(d, DegreeConstraint.of((0, 1), 3))


def test_parse_and_format():
    assert parse_constraint("interval 1 2", 3).feasible == (1, 2)
    assert parse_constraint("parity 0 2", 2).feasible == (0, 2)
    assert parse_constraint("set 0,1,3", 3).feasible == (0, 1, 3)
    assert format_constraint(DegreeConstraint.of((1,), 1)) == "interval 1 1"
    assert format_constraint(DegreeConstraint.of((0, 2), 2)) == "parity 0 2"
    assert format_constraint(DegreeConstraint.of((0, 1, 3), 3)) == "set 0,1,3"
    for bad in ("interval 2 1", "parity 0 1", "set", "set 1,1", "blob 1", "interval x 2", "set 4"):
        with pytest.raises(UsageError):
            parse_constraint(bad, 3)


def test_rejects_empty_and_oversized():
    with pytest.raises(UsageError):
        DegreeConstraint(2, 0)
    with pytest.raises(UsageError):
        DegreeConstraint.of((3,), 2)


@given(st.integers(1, 8).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, 2**(d + 1) - 1))))
def test_format_parse_roundtrip(arg):
    d, mask = arg
    c = DegreeConstraint(d, mask)
    assert parse_constraint(format_constraint(c), d) == c


@given(st.integers(3, 10).flatmap(lambda d: st.tuples(st.just(d), st.integers(0, d - 3), st.booleans())))
def test_split_is_a_parity_partition(arg):
    d, p, first = arg
    c = DegreeConstraint.of((p, p + 1, p + 3) if first else (p, p + 2, p + 3), d)
    d0, d1 = split(c)
    assert d0.mask | d1.mask == c.mask and not d0.mask & d1.mask
    for half in (d0, d1):
        assert classify(half).in_g and len({x % 2 for x in half}) == 1
