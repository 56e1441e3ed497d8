import pytest
from hypothesis import given

from conftest import graphs
from rekolor.decomp import CompleteTreeDecomposition, TreeDecomposition, make_complete, treewidth_exact
from rekolor.errors import ParseError
from rekolor.graph import Coloring, RecolorSequence, RecolorStep
from rekolor.io import (
    format_coloring,
    format_decomposition,
    format_dimacs,
    format_sequence,
    parse_coloring,
    parse_decomposition,
    parse_dimacs,
    parse_sequence,
)


def test_dimacs_basic():
    g = parse_dimacs("c demo\np edge 3 3\ne 1 2\ne 2 3\ne 2 1\n")
    assert g.n == 3 and g.edges == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "p edge 3\n",
        "p edge x 1\n",
        "e 1 2\np edge 2 1\n",
        "p edge 2 1\ne 1 3\n",
        "p edge 2 1\ne 1 1\n",
        "p edge 2 1\nq 1 2\n",
        "p edge 2 1\np edge 2 1\n",
    ],
)
def test_dimacs_errors(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


@given(graphs(min_n=0))
def test_dimacs_round_trip(g):
    assert parse_dimacs(format_dimacs(g, "x")) == g


def test_coloring_round_trip_and_errors():
    c = Coloring((1, 3, 2), 3)
    assert parse_coloring(format_coloring(c)) == c
    assert parse_coloring("1 2\n3\n", n=3, k=5).k == 5
    with pytest.raises(ParseError):
        parse_coloring("1 2", n=3)
    with pytest.raises(ParseError):
        parse_coloring("1 0")
    with pytest.raises(ParseError):
        parse_coloring("1 a")
    with pytest.raises(ParseError):
        parse_coloring("1 4", k=3)


def test_sequence_round_trip_and_variants():
    seq = RecolorSequence(Coloring((1, 2, 1), 3), (RecolorStep(0, 3), RecolorStep(2, 2)))
    assert parse_sequence(format_sequence(seq)) == seq
    inline = parse_sequence("start 1 2 1\n1 3\n3 2\n", k=3)
    assert inline == seq
    empty = parse_sequence("start\n1 2\n")
    assert len(empty) == 0 and empty.start.colors == (1, 2)
    for bad in ["1 2\n", "start\n", "start\n1 2\n3 1\n", "start\n1 2\n1\n", "start\n1 2\n1 0\n"]:
        with pytest.raises(ParseError):
            parse_sequence(bad)
    with pytest.raises(ParseError):
        parse_sequence("start\n1 2\n", n=3)


def test_decomposition_round_trip():
    g = parse_dimacs("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    t = make_complete(g, treewidth_exact(g)[1], 1)
    back = parse_decomposition(format_decomposition(t))
    assert isinstance(back, CompleteTreeDecomposition)
    assert back.bags == t.bags and back.edges == t.edges and back.level == 1
    loose = TreeDecomposition({0: {0, 1, 2}, 1: {2}}, [(0, 1)])
    parsed = parse_decomposition(format_decomposition(loose))
    assert not isinstance(parsed, CompleteTreeDecomposition) and parsed.bags == loose.bags


@pytest.mark.parametrize(
    "text",
    [
        "b 0 1\n",
        "td 2 1\nb 0 1 2\n",
        "td 1 1\nb 0 0\n",
        "td 1 1\nb 0 1\nb 0 2\n",
        "td 2 1\nb 0 1 2\nb 1 2 3\ne 0 5\n",
        "td 1 1\nz\n",
        "td 1\n",
    ],
)
def test_decomposition_errors(text):
    with pytest.raises(ParseError):
        parse_decomposition(text)
