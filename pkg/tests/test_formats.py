from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import seeded_instances
from factorum.errors import ParseError
from factorum.formats import (
    backup_to_instance,
    format_factor,
    format_instance,
    parse_backup,
    parse_edge_list,
    parse_factor,
    parse_instance,
    to_dot,
)
from factorum.instance import brute_force_opt

SAMPLE = """# tiny
vertices 3
v 0 interval 0 1
v 1 set 0,2
v 2 parity 1 1
e 0 1 3/2
e 1 2 -0.25
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst.weights == (Fraction(3, 2), Fraction(-1, 4))
    assert inst.constraints[1].feasible == (0, 2)
    text = format_instance(inst)
    assert "e 1 2 -1/4" in text and "v 2 interval 1 1" in text
    assert parse_instance(text) == inst


@pytest.mark.parametrize(
    "text,line",
    [
        ("v 0 interval 0 0\n", 1),
        ("vertices 2\nv 0 interval 0 1\nv 1 interval 0 1\ne 0 1 x\n", 4),
        ("vertices 2\nv 0 interval 0 1\nv 1 interval 0 1\ne 0 1 1\ne 1 0 2\n", 5),
        ("vertices 2\nv 0 interval 0 1\nv 1 interval 0 1\ne 0 2 1\n", 4),
        ("vertices 2\nv 0 interval 0 1\ne 0 1 1\nv 1 interval 0 1\n", 3),
        ("vertices 2\nv 0 interval 0 1\nv 1 interval 3 1\ne 0 1 1\n", 3),
        ("vertices 2\nv 0 interval 0 1\nv 0 interval 0 1\n", 3),
        ("vertices 1\nvertices 1\n", 2),
        ("vertices 1\nq 0\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_missing_vertex_line():
    with pytest.raises(ParseError):
        parse_instance("vertices 2\nv 0 interval 0 0\n")
    with pytest.raises(ParseError):
        parse_instance("# nothing\n")


def test_factor_roundtrip():
    inst = parse_instance(SAMPLE)
    f = brute_force_opt(inst)
    ff = parse_factor(format_factor(f, inst), inst)
    assert ff.edges == f.sorted() and ff.weight == f.weight
    assert parse_factor("No\n", inst).edges is None
    with pytest.raises(ParseError):
        parse_factor("f 0 2\n", inst)
    with pytest.raises(ParseError):
        parse_factor("No\nweight 1\n", inst)


def test_edge_list_ignores_vertex_lines():
    n, edges, ws = parse_edge_list("vertices 2\ne 0 1 5\n")
    assert (n, edges, ws) == (2, [(0, 1)], [5])


def test_backup_conversion():
    tb = parse_backup("vertices 4\nt 1\nt 2\nt 3\ne 0 1 2\ne 0 2 1\ne 0 3 1\n")
    conv = backup_to_instance(tb)
    inst = conv.instance
    assert inst.constraints[0].feasible == (0, 2, 3)
    assert inst.constraints[1].feasible == (1,)
    assert inst.weights == (-2, -1, -1)
    best = brute_force_opt(inst)
    assert best.sorted() == (0, 1, 2) and tb.total_cost(best.edges) == 4


def test_backup_isolated_terminal_and_negative_cost():
    conv = backup_to_instance(parse_backup("vertices 3\nt 0\nt 2\ne 1 2 1\n"))
    assert conv.instance is None and "terminal 0" in conv.warnings[0]
    with pytest.raises(ParseError):
        parse_backup("vertices 2\nt 0\nt 1\ne 0 1 -1\n")


def test_dot():
    dot = to_dot(parse_instance(SAMPLE))
    assert dot.startswith("graph") and '0 -- 1 [label="3/2"]' in dot


@settings(max_examples=60, deadline=None)
@given(seeded_instances())
def test_roundtrip_property(inst):
    text = format_instance(inst)
    again = parse_instance(text)
    assert again == inst and format_instance(again) == text
