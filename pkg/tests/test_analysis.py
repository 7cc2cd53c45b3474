import pytest

from grajac.abelian import TRIVIAL, AbelianGroup
from grajac.analysis import (
    TwoOppositePaths,
    cycle_orientation,
    cycle_successor,
    double_chain,
    find_global_sink,
    is_cycle_shaped,
    is_two_opposite_paths,
    jacobian,
    laplacian,
    picard_group,
    predicted_rank,
    scc,
    spanning_tree_count,
)
from grajac.errors import CycleShapeRequired, Disconnected, NotUndirected
from grajac.families import gen_cycle, gen_multipartite, gen_two_opposite_paths
from grajac.graph import build_graph
from worked_examples import (
    C3_ONE_WAY,
    C3_SINK_SOURCE,
    C3_UNDIRECTED,
    C5_COUNT_G1,
    C5_COUNT_G2,
    C5_COUNT_G3,
    C5_TWO_PATH,
    ORIENTED_TREE,
    STAR_BI,
    STAR_BI_LAPLACIAN,
    STAR_IN,
    STAR_IN_LAPLACIAN,
    STAR_OUT,
    STAR_OUT_LAPLACIAN,
)
from reference import count_spanning_trees


def test_star_laplacians():
    assert laplacian(STAR_BI).tolist() == STAR_BI_LAPLACIAN
    assert laplacian(STAR_IN).tolist() == STAR_IN_LAPLACIAN
    assert laplacian(STAR_OUT).tolist() == STAR_OUT_LAPLACIAN
    assert laplacian(build_graph(1)).tolist() == [[0]]


def test_multiplicity_and_mixed_kinds_sum():
    g = build_graph(2, [(1, 2, "dir", 2), (1, 2, "bi"), (2, 1)])
    assert laplacian(g).tolist() == [[3, -3], [-2, 2]]


def test_star_picard_groups():
    assert picard_group(STAR_BI) == picard_group(STAR_IN) == AbelianGroup(1)
    assert picard_group(STAR_OUT) == AbelianGroup(4)


def test_triangle_picard_groups():
    assert jacobian(C3_ONE_WAY) == TRIVIAL
    assert picard_group(C3_SINK_SOURCE) == AbelianGroup(1, (2,))
    assert jacobian(C3_UNDIRECTED) == AbelianGroup(0, (3,))


def test_undirected_five_cycle():
    assert picard_group(gen_cycle("DDDDD")) == AbelianGroup(1, (5,))


@pytest.mark.parametrize(
    "g, k", [(C5_TWO_PATH, 3), (C5_COUNT_G1, 4), (C5_COUNT_G2, 5), (C5_COUNT_G3, 2)]
)
def test_five_cycle_jacobians(g, k):
    assert jacobian(g) == AbelianGroup(0, (k,))
    assert picard_group(g).free_rank == 1


def test_trees_have_trivial_jacobian():
    for g in (STAR_BI, STAR_IN, STAR_OUT, ORIENTED_TREE):
        assert jacobian(g) == TRIVIAL
    assert picard_group(ORIENTED_TREE) == AbelianGroup(2)


def test_scc_of_stars():
    d = scc(STAR_BI)
    assert d.terminal_components == [frozenset(range(1, 6))]
    d = scc(STAR_OUT)
    assert d.components == tuple(frozenset({v}) for v in range(1, 6))
    assert d.terminal_components == [frozenset({v}) for v in (1, 2, 4, 5)]
    assert d.component_of(3) == 2
    assert scc(STAR_IN).terminal_components == [frozenset({3})]
    assert scc(build_graph(1)).terminal_flags == (True,)


def test_predicted_rank():
    assert predicted_rank(ORIENTED_TREE) == 2
    assert predicted_rank(C3_ONE_WAY) == 1
    assert predicted_rank(gen_multipartite([2, 3, 4])) == 4


def test_scc_deep_path_no_recursion_limit():
    n = 5000
    g = build_graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])
    assert len(scc(g).components) == 1


def test_global_sink():
    assert find_global_sink(C5_TWO_PATH) == 4
    assert find_global_sink(C3_UNDIRECTED) is None
    assert find_global_sink(build_graph(1)) == 1
    # two sinks
    assert find_global_sink(build_graph(3, [(2, 1), (2, 3)])) is None
    # one sink, not reachable from a sink-free cycle elsewhere
    assert find_global_sink(build_graph(4, [(1, 2), (2, 1), (3, 4)])) is None


def test_spanning_tree_counts():
    c6 = gen_cycle("DDDDDD")
    assert spanning_tree_count(c6) == 6
    assert spanning_tree_count(STAR_BI) == 1
    k4 = build_graph(4, [(i, j, "bi") for i in range(1, 5) for j in range(i + 1, 5)])
    edges = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    assert spanning_tree_count(k4) == count_spanning_trees(4, edges) == 16
    with pytest.raises(NotUndirected):
        spanning_tree_count(STAR_IN)
    with pytest.raises(Disconnected):
        spanning_tree_count(build_graph(3, [(1, 2, "bi")]))


def test_spanning_trees_with_parallel_edges():
    g = build_graph(3, [(1, 2, "bi", 2), (2, 3, "bi"), (1, 3, "bi")])
    assert spanning_tree_count(g) == count_spanning_trees(3, [(1, 2), (1, 2), (2, 3), (1, 3)]) == 5


def test_cycle_shape():
    assert is_cycle_shaped(C3_ONE_WAY)
    assert not is_cycle_shaped(STAR_BI)
    assert not is_cycle_shaped(build_graph(3, [(1, 2, "dir", 2), (2, 3), (3, 1)]))
    assert not is_cycle_shaped(build_graph(2, [(1, 2)]))
    with pytest.raises(CycleShapeRequired):
        cycle_orientation(STAR_BI)


def test_cycle_orientation_reproduces_word():
    for word in ("FFF", "BDF", "FBDDB", "DDBFFB"):
        order, w = cycle_orientation(gen_cycle(word))
        assert w == word
        assert order == tuple(range(1, len(word) + 1))
    assert cycle_successor(gen_cycle("FFFF"), 4) == 1


def test_double_chain():
    g = gen_two_opposite_paths(6, 2, 2)  # FFBBDD
    dc = double_chain(g)
    assert dc.length == 2
    assert dc.vertices == (4, 5, 6, 1, 2)
    assert double_chain(C3_UNDIRECTED) is None
    assert double_chain(C3_SINK_SOURCE).length == 0


def test_double_chain_window_for_sink_source_triangle():
    # sink 1 with in-arrows from 2 and 3; chain window v0 <- v1 -> v2
    assert cycle_orientation(C3_SINK_SOURCE)[1] == "BFF"
    assert double_chain(C3_SINK_SOURCE).vertices == (1, 2, 3)


def test_two_opposite_paths():
    r = is_two_opposite_paths(C5_TWO_PATH)
    assert r.bidirectional_count == 1 and r.sink == 4
    assert r.forward_length + r.backward_length == 4
    r = is_two_opposite_paths(C5_COUNT_G3)
    assert r == TwoOppositePaths(3, 2, 0, 4)
    assert jacobian(C5_COUNT_G3) == AbelianGroup(0, (2,))
    assert is_two_opposite_paths(gen_cycle("DDDD")) is None
    assert is_two_opposite_paths(gen_cycle("FBFB")) is None
