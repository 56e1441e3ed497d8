import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, seeds
from rekolor.decomp import treewidth_exact, validate_tree_decomposition
from rekolor.errors import InputError, SequenceError
from rekolor.generators import (
    gen_bipartite_minus_matching,
    gen_complete,
    gen_cycle,
    gen_empty,
    gen_partial_ktree,
    gen_path,
    gen_star,
    paired_coloring,
    random_proper_coloring,
)
from rekolor.graph import (
    Coloring,
    Graph,
    RecolorSequence,
    RecolorStep,
    conflicts,
    is_proper,
    simplify_sequence,
    validate_sequence,
)


def test_triangle_rainbow_is_proper():
    assert is_proper(gen_complete(3), Coloring((1, 2, 3), 3))


def test_monochromatic_edge_is_improper():
    assert not is_proper(gen_complete(2), Coloring((1, 1), 1))


def test_paired_coloring_of_bipartite_minus_matching_is_proper():
    assert is_proper(gen_bipartite_minus_matching(3), paired_coloring(3))


def test_length_mismatch_rejected():
    with pytest.raises(InputError):
        is_proper(gen_complete(3), Coloring((1, 2), 2))


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 2)])


def test_coloring_range_checked():
    with pytest.raises(InputError):
        Coloring((0, 1), 2)
    with pytest.raises(InputError):
        Coloring((3,), 2)


def test_validate_empty_sequence_returns_start():
    g = gen_path(3)
    start = Coloring((1, 2, 1), 2)
    assert validate_sequence(g, RecolorSequence(start)) == start


def test_validate_single_vertex_step():
    g = gen_empty(1)
    seq = RecolorSequence(Coloring((1,), 2), (RecolorStep(0, 2),))
    assert validate_sequence(g, seq).colors == (2,)


def test_validate_reports_clash_step():
    g = gen_complete(2)
    seq = RecolorSequence(Coloring((1, 2), 2), (RecolorStep(0, 2),))
    with pytest.raises(SequenceError) as err:
        validate_sequence(g, seq)
    assert err.value.step == 0


def test_validate_rejects_noop_and_range():
    g = gen_empty(2)
    start = Coloring((1, 1), 2)
    with pytest.raises(SequenceError) as err:
        validate_sequence(g, RecolorSequence(start, (RecolorStep(1, 2), RecolorStep(0, 1))))
    assert err.value.step == 1
    with pytest.raises(SequenceError):
        validate_sequence(g, RecolorSequence(start, (RecolorStep(0, 3),)))
    with pytest.raises(SequenceError):
        validate_sequence(g, RecolorSequence(start, (RecolorStep(5, 2),)))


def test_generators_shapes():
    assert gen_complete(3).m == 3
    assert gen_star(4).m == 3 and gen_star(4).degree(0) == 3
    assert gen_cycle(5).m == 5
    for n in range(1, 5):
        g = gen_bipartite_minus_matching(n)
        assert g.m == n * (n - 1)
        assert all(not g.has_edge(i, n + i) for i in range(n))
    with pytest.raises(InputError):
        gen_complete(0)


def test_bipartite_minus_matching_two_is_two_disjoint_edges():
    g = gen_bipartite_minus_matching(2)
    assert sorted(g.edges) == [(0, 3), (1, 2)]


def test_partial_two_tree_has_treewidth_at_most_two():
    for seed in range(5):
        g, td = gen_partial_ktree(8, 2, 1.0, seed)
        assert validate_tree_decomposition(g, td) == 2
        assert treewidth_exact(g)[0] == 2


@given(graphs())
def test_is_proper_matches_edge_scan(g):
    rng = random.Random(g.m)
    c = Coloring(tuple(rng.randint(1, 3) for _ in range(g.n)), 3)
    assert is_proper(g, c) == all(c[x] != c[y] for x, y in g.edges)
    assert is_proper(g, c) == (not conflicts(g, c))


@st.composite
def walks(draw):
    g = draw(graphs(max_n=6))
    k = g.max_degree + 2
    rng = random.Random(draw(seeds))
    start = random_proper_coloring(g, k, rng)
    cs = list(start.colors)
    steps = []
    for _ in range(draw(st.integers(0, 12))):
        v = rng.randrange(g.n)
        free = [c for c in range(1, k + 1) if c != cs[v] and all(cs[w] != c for w in g.adj[v])]
        if free:
            cs[v] = rng.choice(free)
            steps.append(RecolorStep(v, cs[v]))
    return g, RecolorSequence(start, tuple(steps))


@given(walks(), st.data())
def test_validation_is_a_left_fold(walk, data):
    g, seq = walk
    cut = data.draw(st.integers(0, len(seq)))
    head = RecolorSequence(seq.start, seq.steps[:cut])
    mid = validate_sequence(g, head)
    tail = RecolorSequence(mid, seq.steps[cut:])
    assert validate_sequence(g, tail) == validate_sequence(g, seq)


@given(walks())
def test_reversal_is_valid(walk):
    g, seq = walk
    back = seq.reversed()
    assert validate_sequence(g, back) == seq.start
    assert back.start == seq.end


@given(walks())
def test_simplify_keeps_endpoints_and_validity(walk):
    g, seq = walk
    short = simplify_sequence(seq)
    assert len(short) <= len(seq)
    assert validate_sequence(g, short) == seq.end
    assert simplify_sequence(seq.then(seq.reversed())).steps == ()


@given(seeds)
def test_partial_ktree_witness_is_valid(seed):
    rng = random.Random(seed)
    n, k = rng.randint(1, 9), rng.randint(0, 3)
    h, td = gen_partial_ktree(n, k, rng.random(), seed)
    assert validate_tree_decomposition(h, td) <= k
