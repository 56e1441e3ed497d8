import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, seeds
from rekolor.decomp import (
    CompleteTreeDecomposition,
    TreeDecomposition,
    Violation,
    complete_violation,
    family_partition,
    find_babies,
    is_coherent,
    make_complete,
    minimalize,
    restrict,
    treewidth_exact,
    validate_complete,
    validate_tree_decomposition,
)
from rekolor.errors import InputError, PreconditionError, ResourceError
from rekolor.generators import gen_complete, gen_cycle, gen_empty, gen_gnp, gen_path
from rekolor.graph import Coloring

P3_TREE = TreeDecomposition({0: {0, 1}, 1: {1, 2}}, [(0, 1)])
P4_TREE = TreeDecomposition({0: {0, 1}, 1: {1, 2}, 2: {2, 3}}, [(0, 1), (1, 2)])


def test_validator_examples():
    assert validate_tree_decomposition(gen_complete(4), TreeDecomposition({0: range(4)})) == 3
    assert validate_tree_decomposition(gen_path(3), P3_TREE) == 1
    broken = TreeDecomposition({0: {0, 1}, 1: {2}, 2: {1}}, [(0, 1), (1, 2)])
    res = validate_tree_decomposition(gen_path(3), broken)
    assert isinstance(res, Violation) and res.axiom == "connected occurrences" and res.witness == 1


def test_validator_reports_each_axiom():
    g = gen_path(3)
    assert validate_tree_decomposition(g, TreeDecomposition({0: {0, 1}})).axiom == "vertex coverage"
    res = validate_tree_decomposition(g, TreeDecomposition({0: {0, 1}, 1: {2}}, [(0, 1)]))
    assert res.axiom == "edge coverage"
    res = validate_tree_decomposition(g, TreeDecomposition({0: {0, 1}, 1: {1, 2}}))
    assert res.axiom == "tree"


def test_treewidth_examples():
    assert treewidth_exact(gen_path(5))[0] == 1
    for n in range(1, 7):
        assert treewidth_exact(gen_complete(n))[0] == n - 1
    assert treewidth_exact(gen_cycle(4))[0] == 2
    with pytest.raises(ResourceError):
        treewidth_exact(gen_empty(25))


def test_restrict_examples():
    assert restrict(P3_TREE, set()) is P3_TREE
    single = restrict(P3_TREE, {0})
    assert list(single.bags.values()) == [frozenset({1, 2})]
    assert complete_violation(single, 1) is None
    # removing the inner vertex 1 of P_4's path: {0}, {2}, {2,3}; only {2} folds into {2,3}
    out = restrict(P4_TREE, {1})
    assert sorted(map(sorted, out.bags.values())) == [[0], [2, 3]]
    assert len(out.bags) == 2 and len(out.edges) == 1


def test_make_complete_examples():
    g = gen_complete(3)
    single = make_complete(g, TreeDecomposition({0: range(3)}), 2)
    assert list(single.bags.values()) == [frozenset(range(3))]
    p3 = make_complete(gen_path(3), P3_TREE, 1)
    assert sorted(map(sorted, p3.bags.values())) == [[0, 1], [1, 2]]
    g = gen_empty(3)
    out = make_complete(g, treewidth_exact(g)[1], 1)
    assert len(out.bags) == 2 and out.vertices == {0, 1, 2}
    assert validate_complete(g, out, 1) == 1
    with pytest.raises(PreconditionError):
        make_complete(gen_path(3), P3_TREE, 0)
    with pytest.raises(PreconditionError):
        make_complete(gen_path(3), P3_TREE, 3)


def test_babies_examples():
    single = CompleteTreeDecomposition({0: {0, 1, 2}}, (), 2)
    assert find_babies(single) == {0, 1, 2}
    assert find_babies(CompleteTreeDecomposition.of(P3_TREE, 1)) == {0, 2}
    assert find_babies(CompleteTreeDecomposition.of(P4_TREE, 1)) == {0, 3}


def test_family_examples():
    single = CompleteTreeDecomposition({0: {0, 1, 2}}, (), 2)
    assert family_partition(single).families() == [[0], [1], [2]]
    assert family_partition(CompleteTreeDecomposition.of(P3_TREE, 1)).families() == [[0, 2], [1]]
    assert family_partition(CompleteTreeDecomposition.of(P4_TREE, 1)).families() == [[0, 2], [1, 3]]


def test_coherence_examples():
    g = gen_path(3)
    t = CompleteTreeDecomposition.of(P3_TREE, 1)
    assert is_coherent(g, t, Coloring((1, 2, 3), 3), [])
    assert is_coherent(g, t, Coloring((1, 2, 1), 3), range(3))
    # 0 and 2 are parents with different colors
    assert not is_coherent(g, t, Coloring((1, 2, 3), 3), range(3))
    assert is_coherent(g, t, Coloring((1, 2, 3), 3), [0, 1])


def test_complete_type_rejects_bad_shapes():
    with pytest.raises(InputError):
        CompleteTreeDecomposition({0: {0, 1}, 1: {2, 3}}, [(0, 1)], 1)
    with pytest.raises(InputError):
        CompleteTreeDecomposition({0: {0, 1}, 1: {1}}, [(0, 1)], 1)


@st.composite
def complete_instances(draw, max_n=9):
    g = draw(graphs(max_n=max_n))
    tw, td = treewidth_exact(g)
    level = draw(st.integers(max(tw, 0), g.n - 1))
    return g, td, make_complete(g, td, level)


@given(complete_instances())
def test_make_complete_contains_input_bags(inst):
    g, td, t = inst
    assert validate_complete(g, t, t.level) == t.level
    for bag in minimalize(td).bags.values():
        assert any(bag <= b for b in t.bags.values())


@given(complete_instances())
def test_families(inst):
    g, _, t = inst
    part = family_partition(t)
    assert part.count == t.level + 1
    for fam in part.families():
        assert g.is_stable(fam)
        for bag in t.bags.values():
            assert len(bag & set(fam)) == 1


@given(complete_instances(), seeds)
def test_connected_subtrees_stay_complete(inst, seed):
    _, _, t = inst
    rng = random.Random(seed)
    keep = {rng.choice(t.nodes)}
    for _ in range(rng.randint(0, len(t.nodes))):
        frontier = [q for p in keep for q in t.neighbors[p] if q not in keep]
        if frontier:
            keep.add(rng.choice(frontier))
    assert complete_violation(t.subtree(keep), t.level) is None


@given(complete_instances())
def test_removing_a_baby_keeps_completeness(inst):
    g, _, t = inst
    for x in sorted(find_babies(t)):
        rest = restrict(t, {x})
        level = min(t.level, g.n - 2)
        if g.n > 1:
            assert complete_violation(rest, level) is None


@given(st.integers(1, 9), st.floats(0, 1), seeds)
def test_treewidth_bounds(n, p, seed):
    g = gen_gnp(n, p, seed)
    tw, td = treewidth_exact(g)
    assert td.size == tw and validate_tree_decomposition(g, td) == tw
    assert tw <= max(g.max_degree, 0)
    for p_, q_ in td.edges:
        assert not td.bags[p_] <= td.bags[q_] and not td.bags[q_] <= td.bags[p_]
