import pytest

from grajac.abelian import TRIVIAL, AbelianGroup
from grajac.analysis import (
    cycle_orientation,
    double_chain,
    find_global_sink,
    is_two_opposite_paths,
    jacobian,
    laplacian,
    picard_group,
    predicted_rank,
)
from grajac.errors import (
    CycleShapeRequired,
    DegreeMismatch,
    EmptyLayer,
    GrajacError,
    InfeasibleParameters,
    NotASinkVertex,
    WheelTooSmall,
    WordTooShort,
)
from grajac.families import (
    all_orientation_words,
    apply_extension,
    degree_one_extension,
    degree_zero_extension,
    extension_sites,
    gen_cycle,
    gen_long_chain_cycle,
    gen_multipartite,
    gen_short_chain_cycle,
    gen_random_tree,
    gen_two_opposite_paths,
    gen_wheel,
    matrix_M,
    prufer_edges,
    relabel_cycle,
    single_term_cycle,
)
from grajac.graph import build_graph
from grajac.linalg import determinant, snf_diagonal
from grajac.rng import SplitMix64
from worked_examples import (
    BIPARTITE_2_3_LAPLACIAN,
    C3_SINK_SOURCE,
    C3_TWO_PATH_LAPLACIAN,
    C3_UNDIRECTED,
    C5_COUNT_G3,
    C5_DEG0,
    C5_DEG1,
    C5_TWO_PATH,
    C6_DEG0,
    C6_DEG1,
    STAR_BI,
)


def z_k(k):
    return AbelianGroup(0, (k,)) if k > 1 else TRIVIAL


def test_gen_cycle_words():
    assert jacobian(gen_cycle("FFF")) == TRIVIAL
    assert gen_cycle("DDD") == C3_UNDIRECTED
    assert picard_group(gen_cycle("DDD")) == AbelianGroup(1, (3,))
    assert jacobian(gen_cycle("BBF")) == z_k(2)
    assert gen_cycle("bff") == C3_SINK_SOURCE
    with pytest.raises(WordTooShort):
        gen_cycle("FB")
    with pytest.raises(GrajacError):
        gen_cycle("FBX")


def test_zero_rows_exactly_at_sinks():
    for word in all_orientation_words(5):
        g = gen_cycle(word)
        lap = laplacian(g)
        zero_rows = {i + 1 for i in range(5) if not any(lap.row(i))}
        sinks = {i + 1 for i in range(5) if word[i] == "B" and word[i - 1] == "F"}
        assert zero_rows == sinks


def test_all_orientation_words():
    words = list(all_orientation_words(3))
    assert len(words) == 27 and len(set(words)) == 27


def test_degree_zero_extension_worked_pair():
    assert degree_zero_extension(C5_DEG0, 5) == C6_DEG0
    assert picard_group(C6_DEG0) == picard_group(C5_DEG0)


def test_degree_one_extension_worked_pair():
    assert degree_one_extension(C5_DEG1, 5) == C6_DEG1
    assert picard_group(C6_DEG1) == picard_group(C5_DEG1)


def test_two_extensions_keep_picard_group():
    # frozen: Z^2 x Z_2 from an independent SNF of the starting cycle
    g = apply_extension(C6_DEG0, extension_sites(C6_DEG0)[0])
    assert g.vertex_count == 7
    assert picard_group(g) == picard_group(C5_DEG0) == AbelianGroup(2, (2,))


def test_bidirectional_degree_one_case():
    g = gen_cycle("FDBB")  # vertex 2 leaves only through 2<->3
    h = degree_one_extension(g, 2)
    assert h == build_graph(5, [(1, 2), (2, 5), (5, 3, "bi"), (4, 3), (1, 4)])
    assert picard_group(h) == picard_group(g)


def test_extension_errors():
    with pytest.raises(NotASinkVertex):
        degree_zero_extension(C5_DEG0, 4)
    with pytest.raises(DegreeMismatch):
        degree_one_extension(C5_DEG0, 5)
    with pytest.raises(CycleShapeRequired):
        degree_zero_extension(STAR_BI, 1)
    with pytest.raises(CycleShapeRequired):
        degree_one_extension(STAR_BI, 1)
    with pytest.raises(GrajacError):
        degree_zero_extension(C5_DEG0, 5, toward=2)


def test_two_opposite_paths_generator():
    g = gen_two_opposite_paths(5, 1, 1)
    assert jacobian(g) == z_k(3)
    assert relabel_cycle(g) == g
    # same cycle as the worked five-cycle up to rotation
    assert is_two_opposite_paths(g).bidirectional_count == is_two_opposite_paths(C5_TWO_PATH).bidirectional_count
    assert jacobian(gen_two_opposite_paths(5, 0, 3)) == jacobian(C5_COUNT_G3) == z_k(2)
    g3 = gen_two_opposite_paths(3, 1, 1)
    assert snf_diagonal(laplacian(g3)) == snf_diagonal(C3_TWO_PATH_LAPLACIAN) == [1, 3, 0]
    for bad in [(5, 4, 1), (5, 0, 5), (2, 0, 1), (5, -1, 1)]:
        with pytest.raises(InfeasibleParameters):
            gen_two_opposite_paths(*bad)


def test_two_path_jacobian_independent_of_p1():
    for p1 in range(1, 6):
        assert jacobian(gen_two_opposite_paths(8, 2, p1)) == z_k(4)


def test_short_chain_cycle():
    assert jacobian(gen_short_chain_cycle(6)) == z_k(5)
    assert jacobian(gen_short_chain_cycle(10)) == z_k(9)
    assert gen_short_chain_cycle(3) == C3_SINK_SOURCE
    assert cycle_orientation(gen_short_chain_cycle(5))[1] == "BBDDF"
    with pytest.raises(WordTooShort):
        gen_short_chain_cycle(2)


def test_long_chain_cycle():
    assert jacobian(gen_long_chain_cycle(5)) == z_k(5)
    assert jacobian(gen_long_chain_cycle(3)) == jacobian(C3_UNDIRECTED) == z_k(3)
    assert jacobian(gen_long_chain_cycle(8)) == z_k(8)
    g = gen_long_chain_cycle(6)
    lap = laplacian(g)
    assert not any(lap.row(0)) and all(lap[i, i] == 2 for i in range(1, 6))
    assert double_chain(g).length == 4


def test_wheels():
    w4 = gen_wheel(4, "spokes-out")
    assert laplacian(w4).row(0) == (3, -1, -1, -1)
    assert laplacian(w4).row(1) == (0, 2, -1, -1)
    w7 = gen_wheel(7)
    assert len(w7.arcs) == 12 and w7.is_undirected()
    w5 = gen_wheel(5, "spokes-in")
    assert not any(laplacian(w5).row(0))
    with pytest.raises(WheelTooSmall):
        gen_wheel(3)
    with pytest.raises(GrajacError):
        gen_wheel(5, "sideways")


def test_multipartite():
    assert laplacian(gen_multipartite([2, 3])).tolist() == BIPARTITE_2_3_LAPLACIAN
    g = gen_multipartite([4, 1, 3])
    assert predicted_rank(g) == 3 and jacobian(g) == TRIVIAL
    lap = laplacian(gen_multipartite([2, 3, 4])).tolist()
    assert [lap[i][i] for i in range(9)] == [3, 3, 4, 4, 4, 0, 0, 0, 0]
    assert all(lap[i][j] == -1 for i in range(2) for j in range(2, 5))
    assert all(lap[i][j] == -1 for i in range(2, 5) for j in range(5, 9))
    with pytest.raises(EmptyLayer):
        gen_multipartite([2, 0])
    with pytest.raises(GrajacError):
        gen_multipartite([3])


def _naive_prufer_decode(seq, n):
    # textbook O(n^2) decoding used as an independent check
    degree = {v: 1 for v in range(1, n + 1)}
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in degree if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] = 0
        degree[x] -= 1
    u, w = sorted(v for v in degree if degree[v] == 1)
    edges.append((u, w))
    return edges


def test_prufer_decode_matches_naive():
    rng = SplitMix64(77)
    for n in range(2, 12):
        for _ in range(20):
            seq = [rng.below(n) + 1 for _ in range(n - 2)]
            assert prufer_edges(seq, n) == _naive_prufer_decode(seq, n)


def test_random_tree_draw_order_matches_documentation():
    n, seed = 8, 42
    rng = SplitMix64(seed)
    seq = [rng.below(n) + 1 for _ in range(n - 2)]
    arcs = []
    for child, parent in _naive_prufer_decode(seq, n):
        if rng.unit() < 0.3:
            arcs.append((child, parent, "bi"))
        elif rng.below(2) == 0:
            arcs.append((child, parent))
        else:
            arcs.append((parent, child))
    assert gen_random_tree(n, seed, 0.3) == build_graph(n, arcs)


def test_random_tree_examples():
    single = gen_random_tree(1, 0)
    assert picard_group(single) == AbelianGroup(1)
    g = gen_random_tree(6, 42)
    assert jacobian(g) == TRIVIAL
    assert picard_group(g).free_rank == predicted_rank(g)
    assert gen_random_tree(10, 5, 0.5) == gen_random_tree(10, 5, 0.5)
    assert gen_random_tree(10, 5, 0.5) != gen_random_tree(10, 6, 0.5)


def test_random_tree_direction_rules():
    up = gen_random_tree(9, 3, direction_rule="to-root")
    assert find_global_sink(up) == 9
    down = gen_random_tree(9, 3, direction_rule="from-root")
    assert predicted_rank(down) == sum(1 for v in down.vertices if not down.successors()[v])
    assert gen_random_tree(9, 3, 1.0).is_undirected()
    with pytest.raises(GrajacError):
        gen_random_tree(4, 1, direction_rule="sideways")


def test_matrix_m():
    assert matrix_M(2).tolist() == [[2, -1], [-1, 2]]
    assert determinant(matrix_M(2)) == 3
    assert determinant(matrix_M(5)) == 6
    assert snf_diagonal(matrix_M(5)) == [1, 1, 1, 1, 6]
    assert matrix_M(1).tolist() == [[2]]


@pytest.mark.parametrize("n", range(3, 10))
def test_single_term_cycles(n):
    for k in range(1, n + 1):
        g = single_term_cycle(n, k)
        assert g.vertex_count == n
        assert picard_group(g) == AbelianGroup(1, (k,) if k > 1 else ())


def test_single_term_bounds():
    with pytest.raises(InfeasibleParameters):
        single_term_cycle(4, 5)
    with pytest.raises(InfeasibleParameters):
        single_term_cycle(2, 1)
