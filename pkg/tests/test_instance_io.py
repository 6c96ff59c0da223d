import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcol.errors import InstanceParseError
from lcol.gadgets import gen_fig1, gen_H_k5
from lcol.instance_io import parse_document, parse_instance, write_instance

from support import graphs, list_assignments


def test_minimal_document():
    g, lists = parse_instance("p lcol 2 1\ne 0 1\nl 0 1\nl 1 2\n")
    assert g.sorted_edges() == [(0, 1)]
    assert lists == {0: frozenset({1}), 1: frozenset({2})}


def test_comments_and_blank_lines():
    text = "# hello\n\np lcol 2 1  # trailing\ne 1 0\nl 0 1 2\n\nl 1 3\n"
    g, lists = parse_instance(text)
    assert g.sorted_edges() == [(0, 1)]
    assert lists[0] == {1, 2}


def test_meta_lines_survive_round_trip():
    inst = gen_fig1(4)
    text = write_instance(inst.graph, inst.lists, inst.meta.as_lines())
    doc = parse_document(text)
    assert doc.meta_dict()["provenance"] == "fig1"
    assert doc.meta_dict()["claimed.kappa"] == "2"


@pytest.mark.parametrize("make", [lambda: gen_fig1(4), lambda: gen_H_k5(7, 12)])
def test_gadget_round_trip(make):
    inst = make()
    text = write_instance(inst.graph, inst.lists)
    g, lists = parse_instance(text)
    assert g == inst.graph
    assert lists == inst.lists
    assert write_instance(g, lists) == text


@given(graphs(max_n=12).flatmap(lambda g: st.tuples(st.just(g), list_assignments(g, palette=9))))
def test_round_trip_identity(case):
    g, lists = case
    text = write_instance(g, lists)
    g2, lists2 = parse_instance(text)
    assert g2 == g and lists2 == {v: frozenset(c) for v, c in lists.items()}
    assert write_instance(g2, lists2) == text


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("p lcol 2 1\ne 0 5\nl 0 1\nl 1 1\n", 2, "out of range"),
        ("p lcol 2 1\ne 0 0\nl 0 1\nl 1 1\n", 2, "self-loop"),
        ("p lcol 2 2\ne 0 1\ne 1 0\nl 0 1\nl 1 1\n", 3, "duplicate edge"),
        ("p lcol 2 0\nl 2 1\n", 2, "unknown vertex"),
        ("p lcol 1 0\nl 0 1\nl 0 2\n", 3, "second list"),
        ("p lcol 1 0\nl 0\n", 2, "empty list"),
        ("p lcol 1 0\nl 0 1 1\n", 2, "repeated color"),
        ("p lcol 1 0\nx 0\n", 2, "unknown line type"),
        ("e 0 1\n", 1, "before the problem line"),
        ("p lcol 1 0\np lcol 1 0\n", 2, "second problem line"),
        ("p lcol two 0\n", 1, "integer"),
        ("p graph 1 0\n", 1, "expected 'p lcol"),
        ("p lcol 2 1\ne 0 -1\n", 2, "negative"),
    ],
)
def test_errors_name_the_line(text, line, fragment):
    with pytest.raises(InstanceParseError, match=fragment) as err:
        parse_instance(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}")


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "missing"),
        ("p lcol 2 2\ne 0 1\nl 0 1\nl 1 1\n", "declares 2 edges"),
        ("p lcol 2 0\nl 0 1\n", "no list"),
    ],
)
def test_document_level_errors(text, fragment):
    with pytest.raises(InstanceParseError, match=fragment):
        parse_instance(text)


def test_error_reports_column():
    with pytest.raises(InstanceParseError) as err:
        parse_instance("p lcol 2 1\ne 0   7\n")
    assert err.value.column == 7
