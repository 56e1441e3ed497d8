import random
from itertools import permutations

import pytest
from hypothesis import given

from conftest import graphs, seeds
from rekolor.errors import PreconditionError, ResourceError
from rekolor.generators import (
    gen_bipartite_minus_matching,
    gen_complete,
    gen_cycle,
    gen_empty,
    gen_gnp,
    gen_path,
    gen_star,
    random_proper_coloring,
)
from rekolor.graph import Coloring, Graph, validate_sequence
from rekolor.grundy import (
    chromatic_number_exact,
    greedy_coloring,
    grundy_number_brute_force,
    grundy_number_exact,
    grundy_number_orders,
    grundy_number_search,
    grundy_number_subsets,
    grundy_recolor,
    grundy_recolor_to_optimal,
    is_greedy,
)
from rekolor.oracle import oracle_distance


def test_greedy_examples():
    assert greedy_coloring(gen_complete(4), [2, 0, 3, 1]).colors == (2, 4, 1, 3)
    assert greedy_coloring(gen_path(3), [0, 2, 1]).colors == (1, 2, 1)
    # P_4 a-b-c-d in order a, d, b, c
    assert greedy_coloring(gen_path(4), [0, 3, 1, 2]).colors == (1, 2, 3, 1)


def test_grundy_examples():
    assert grundy_number_exact(gen_empty(4)) == 1
    for n in range(1, 7):
        assert grundy_number_exact(gen_complete(n)) == n
    for n in range(1, 5):
        assert grundy_number_exact(gen_bipartite_minus_matching(n)) == n
    assert grundy_number_exact(gen_path(4)) == 3
    assert grundy_number_exact(gen_star(4)) == 2


def test_chromatic_examples():
    assert chromatic_number_exact(gen_empty(3)).chromatic_number == 1
    assert chromatic_number_exact(gen_complete(4)).chromatic_number == 4
    assert chromatic_number_exact(gen_cycle(5)).chromatic_number == 3
    info = chromatic_number_exact(gen_bipartite_minus_matching(3))
    assert info.chromatic_number == 2
    assert is_greedy(gen_bipartite_minus_matching(3), info.witness)


def test_resource_guard():
    with pytest.raises(ResourceError):
        grundy_number_exact(gen_empty(30))
    with pytest.raises(ResourceError):
        grundy_number_brute_force(gen_empty(12))


def test_larger_graphs_use_the_search():
    g = gen_gnp(14, 0.4, 3)
    assert grundy_number_exact(g) == grundy_number_search(g)


def test_walk_to_optimal_examples():
    g = gen_empty(3)
    a = Coloring((2, 3, 1), 3)
    beta = Coloring((1, 1, 1), 3)
    seq = grundy_recolor_to_optimal(g, 3, a, beta)
    assert len(seq) <= 3 and validate_sequence(g, seq) == beta
    assert len(grundy_recolor_to_optimal(g, 3, beta, beta)) == 0

    p3 = gen_path(3)
    a, beta = Coloring((2, 3, 2), 3), Coloring((1, 2, 1), 3)
    seq = grundy_recolor_to_optimal(p3, 3, a, beta)
    assert validate_sequence(p3, seq) == beta
    assert len(seq) == 3 == oracle_distance(p3, 3, a, beta)


def test_walk_to_optimal_rejects_non_greedy_target():
    g = gen_path(3)
    with pytest.raises(PreconditionError):
        grundy_recolor_to_optimal(g, 3, Coloring((1, 2, 1), 3), Coloring((1, 3, 1), 3))
    # optimal but not greedy: the isolated vertex 3 has color 2 without a neighbor colored 1
    h = Graph.from_edges(4, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        grundy_recolor_to_optimal(h, 3, Coloring((1, 2, 1, 1), 3), Coloring((1, 2, 1, 2), 3))


def test_grundy_walk_examples():
    star = gen_star(4)
    rng = random.Random(0)
    for _ in range(10):
        a, b = random_proper_coloring(star, 3, rng), random_proper_coloring(star, 3, rng)
        seq = grundy_recolor(star, 3, a, b, simplify=False)
        assert validate_sequence(star, seq) == b and len(seq) <= 32
    a = Coloring((1, 2, 2, 2), 3)
    assert len(grundy_recolor(star, 3, a, a)) == 0

    g = gen_bipartite_minus_matching(3)
    a = Coloring((1, 2, 3, 1, 2, 3), 4)
    b = Coloring((4, 4, 4, 1, 1, 1), 4)
    seq = grundy_recolor(g, 4, a, b, simplify=False)
    assert validate_sequence(g, seq) == b and len(seq) <= 72
    assert oracle_distance(g, 4, a, b) <= len(seq)


def test_grundy_walk_needs_enough_colors():
    g = gen_bipartite_minus_matching(3)
    a = Coloring((1, 2, 3, 1, 2, 3), 3)
    with pytest.raises(PreconditionError, match="grundy number 3"):
        grundy_recolor(g, 3, a, a)


@given(graphs(max_n=7))
def test_greedy_output_is_grundy_feasible(g):
    order = list(range(g.n))[::-1]
    c = greedy_coloring(g, order)
    assert is_greedy(g, c)
    pos = {v: i for i, v in enumerate(order)}
    for v in range(g.n):
        earlier = {c[w] for w in g.adj[v] if pos[w] < pos[v]}
        assert set(range(1, c[v])) <= earlier


@given(graphs(max_n=7))
def test_parameter_sandwich(g):
    chi = chromatic_number_exact(g)
    chi_g = grundy_number_exact(g)
    assert chi.chromatic_number <= chi_g <= g.max_degree + 1
    assert chi.witness.max_color == chi.chromatic_number and is_greedy(g, chi.witness)


@given(graphs(max_n=7))
def test_exact_methods_agree(g):
    value = grundy_number_subsets(g)
    assert grundy_number_search(g) == value
    assert grundy_number_brute_force(g) == value


def test_orders_enumerator_matches_literal_definition():
    g = gen_path(4)
    best = max(greedy_coloring(g, o).max_color for o in permutations(range(4)))
    assert grundy_number_orders(g) == best == 3


@given(graphs(max_n=7), seeds)
def test_grundy_recolor_is_valid_and_bounded(g, seed):
    rng = random.Random(seed)
    chi_g = grundy_number_exact(g)
    k = chi_g + 1
    a, b = random_proper_coloring(g, k, rng), random_proper_coloring(g, k, rng)
    raw = grundy_recolor(g, k, a, b, simplify=False)
    assert validate_sequence(g, raw) == b
    assert len(raw) <= 4 * chi_g * g.n
    short = grundy_recolor(g, k, a, b)
    assert validate_sequence(g, short) == b and len(short) <= len(raw)
