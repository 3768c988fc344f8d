from itertools import product

import numpy as np
import pytest

from conftest import ISH3_LABELS, SHI3_LABELS, word
from shiish.arrangement import ArrangementSpec, LimitExceeded, all_specs
from shiish.exact import det_fraction_free
from shiish.graphs import (ArcId, AugmentedGraph, DirectedMultigraph, NotAnArborescence,
                           all_vectors, augmented_graph, augmented_of, dfs_burn,
                           enumerate_arborescences, enumerate_parking_functions, fits,
                           graph_of_arrangement, is_arborescence, is_parking_definition,
                           laplacian, parking_mask, reduced_determinant,
                           reduced_laplacian, tree_to_parking)

SHI3 = ArrangementSpec.shi(3)
ISH3 = ArrangementSpec.ish(3)


def test_graphs_of_n3():
    assert sorted(graph_of_arrangement(SHI3).arcs) == [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]
    assert sorted(graph_of_arrangement(ISH3).arcs) == [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 1)]


def test_neighbor_lists():
    assert [augmented_of(SHI3).heads(v) for v in range(4)] == [(3, 2, 1), (3, 2), (3, 1), (2, 1)]
    assert [augmented_of(ISH3).heads(v) for v in range(4)] == [(3, 2, 1), (3, 3, 2), (1,), (2, 1)]
    assert augmented_of(ISH3).neighbors[1][:2] == (ArcId(1, 3, 1), ArcId(1, 3, 2))
    one = augmented_graph(DirectedMultigraph((1,), ()))
    assert one.heads(0) == (1,) and one.heads(1) == ()


def test_loops_rejected():
    with pytest.raises(ValueError):
        DirectedMultigraph((1, 2), ((1, 1),))


@pytest.mark.parametrize("spec,a,burnt,ok", [
    (SHI3, (2, 0, 1), (0, 2, 3, 1), True),
    (SHI3, (0, 2, 2), (0, 1), False),
    (ISH3, (2, 0, 1), (0, 2), False),
    (ISH3, (0, 2, 2), (0, 1, 3, 2), True),
], ids=["shi-201", "shi-022", "ish-201", "ish-022"])
def test_burn_traces(spec, a, burnt, ok):
    t = dfs_burn(augmented_of(spec), a)
    assert t.burnt_vertices == burnt
    assert t.fits is ok


def test_burn_does_not_mutate_input():
    a = [0, 2, 2]
    dfs_burn(augmented_of(ISH3), a)
    assert a == [0, 2, 2]


def test_parallel_arc_trees():
    # the doubled arc 1 -> 3 separates 022 from 021
    g = augmented_of(ISH3)
    t022 = dfs_burn(g, (0, 2, 2)).tree_edges
    t021 = dfs_burn(g, (0, 2, 1)).tree_edges
    assert t022 == (ArcId(0, 1), ArcId(1, 3, 2), ArcId(1, 2))
    assert t021 == (ArcId(0, 1), ArcId(1, 3, 1), ArcId(1, 2))
    assert tree_to_parking(g, t022) == (0, 2, 2)
    assert tree_to_parking(g, t021) == (0, 2, 1)


def test_tree_to_parking_on_other_trees():
    g = augmented_of(ISH3)
    assert tree_to_parking(g, [ArcId(0, 1), ArcId(1, 3, 2), ArcId(3, 2)]) == (0, 1, 2)
    assert tree_to_parking(g, [ArcId(0, 1), ArcId(1, 3, 1), ArcId(3, 2)]) == (0, 1, 1)
    with pytest.raises(NotAnArborescence):
        tree_to_parking(g, [ArcId(0, 1), ArcId(1, 3)])


def _star_oracle(gbar):
    """Star from 0 with roots visited n, n-1, ..., 1: each vertex is burnt
    after every larger one, which dampens all of its arcs into it."""
    m = gbar.multiplicity_matrix()
    n = gbar.n
    return tuple(int(sum(m[i, j] for i in range(j + 1, n + 1))) for j in range(1, n + 1))


@pytest.mark.parametrize("spec", all_specs(3) + all_specs(4) + all_specs(5), ids=str)
def test_star_tree(spec):
    g = augmented_of(spec)
    star = [ArcId(0, j) for j in range(1, spec.n + 1)]
    a = tree_to_parking(g, star)
    assert a == _star_oracle(g)
    assert set(dfs_burn(g, a).tree_edges) == set(star)


def test_star_tree_is_not_indegree_minus_one():
    g = augmented_of(SHI3)
    m = g.multiplicity_matrix()
    indeg = tuple(int(m[:, j].sum()) - 1 for j in range(1, 4))
    assert tree_to_parking(g, [ArcId(0, j) for j in (1, 2, 3)]) == (2, 1, 0) != indeg


def test_fits_zero_vector():
    for spec in all_specs(5):
        assert fits(augmented_of(spec), (0,) * 5)
        assert is_parking_definition(graph_of_arrangement(spec), (0,) * 5)


@pytest.mark.parametrize("spec", all_specs(3) + all_specs(4), ids=str)
def test_burning_matches_subset_definition(spec):
    g = graph_of_arrangement(spec)
    gbar = augmented_graph(g)
    n = spec.n
    for a in product(range(n + 1), repeat=n):
        assert fits(gbar, a) == is_parking_definition(g, a), a


def test_example_laplacians():
    assert laplacian(augmented_of(SHI3)).to_rows() == [
        [0, -1, -1, -1], [0, 3, -1, -1], [0, -1, 3, -1], [0, -1, -1, 3]]
    assert laplacian(augmented_of(ISH3)).to_rows() == [
        [0, -1, -1, -1], [0, 3, -1, -2], [0, -1, 3, 0], [0, -1, -1, 3]]
    assert reduced_determinant(augmented_of(SHI3)) == 16
    assert reduced_determinant(augmented_of(ISH3)) == 16
    single = AugmentedGraph(1, ((ArcId(0, 1),), ()))
    assert reduced_determinant(single) == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_reduced_laplacian_shape(n):
    for spec in all_specs(n):
        rows = reduced_laplacian(augmented_of(spec)).to_rows()
        for j in range(n):
            assert sum(r[j] for r in rows) == 1
            assert all(rows[i][j] == -1 for i in range(j + 1, n))
        assert det_fraction_free(reduced_laplacian(augmented_of(spec))) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("spec", all_specs(3) + all_specs(4) + all_specs(5), ids=str)
def test_matrix_tree_counts(spec):
    g = augmented_of(spec)
    n = spec.n
    trees = enumerate_arborescences(g)
    assert all(is_arborescence(g, t) for t in trees)
    assert len(set(trees)) == len(trees)
    pfs = enumerate_parking_functions(g, method="vectorized")
    assert len(trees) == reduced_determinant(g) == len(pfs) == (n + 1) ** (n - 1)
    if n <= 4:
        assert enumerate_parking_functions(g) == pfs


@pytest.mark.parametrize("spec", all_specs(3) + all_specs(4), ids=str)
def test_round_trips(spec):
    g = augmented_of(spec)
    trees = enumerate_arborescences(g)
    pfs = enumerate_parking_functions(g)
    for a in pfs:
        assert tree_to_parking(g, dfs_burn(g, a).tree_edges) == a
    for t in trees:
        assert tuple(sorted(dfs_burn(g, tree_to_parking(g, t)).tree_edges)) == t


def test_parking_sets_match_n3_labels():
    assert {word(a) for a in enumerate_parking_functions(augmented_of(SHI3))} == SHI3_LABELS
    assert {word(a) for a in enumerate_parking_functions(augmented_of(ISH3))} == ISH3_LABELS


def test_vectorized_mask_matches_dfs():
    for spec in all_specs(5):
        g = augmented_of(spec)
        vs = all_vectors(5, 6)[::7]
        mask = parking_mask(g, vs)
        assert mask.tolist() == [fits(g, tuple(int(v) for v in row)) for row in vs]


def test_all_vectors():
    vs = all_vectors(3, 2)
    assert vs.dtype == np.int8
    assert vs.tolist() == [list(p) for p in product(range(2), repeat=3)]


def test_arborescence_limit():
    with pytest.raises(LimitExceeded):
        enumerate_arborescences(augmented_of(ArrangementSpec.shi(9)))


def test_unknown_method():
    with pytest.raises(ValueError):
        enumerate_parking_functions(augmented_of(SHI3), method="magic")
