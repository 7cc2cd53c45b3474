"""Generators for the graph families studied here.

Cycles are described by orientation words: letter ``i`` of a word of
length ``n`` orients the edge ``{v_i, v_{i+1 mod n}}`` as ``F``
(``v_i -> v_{i+1}``), ``B`` (``v_{i+1} -> v_i``) or ``D`` (bi-directional).
"""
from __future__ import annotations

import enum
import heapq
from itertools import product
from typing import Iterator, Sequence

from .analysis import cycle_orientation, cycle_successor, is_cycle_shaped
from .errors import (
    CycleShapeRequired,
    DegreeMismatch,
    EmptyLayer,
    GrajacError,
    InfeasibleParameters,
    NotASinkVertex,
    WheelTooSmall,
    WordTooShort,
)
from .graph import BIDIRECTIONAL, FORWARD, Arc, DirectedMultigraph, build_graph, out_degree
from .linalg import IntegerMatrix
from .rng import DEFAULT_SEED, SplitMix64

LETTERS = "FBD"


def check_word(word: str) -> str:
    word = word.upper()
    if len(word) < 3:
        raise WordTooShort(f"orientation words need length >= 3, got {word!r}")
    bad = set(word) - set(LETTERS)
    if bad:
        raise GrajacError(f"orientation letters must be F, B or D, got {sorted(bad)}")
    return word


def gen_cycle(word: str) -> DirectedMultigraph:
    word = check_word(word)
    n = len(word)
    arcs = []
    for i, letter in enumerate(word, start=1):
        j = i % n + 1
        if letter == "F":
            arcs.append(Arc(i, j, FORWARD))
        elif letter == "B":
            arcs.append(Arc(j, i, FORWARD))
        else:
            arcs.append(Arc(i, j, BIDIRECTIONAL))
    return build_graph(n, arcs)


def all_orientation_words(n: int) -> Iterator[str]:
    for letters in product(LETTERS, repeat=n):
        yield "".join(letters)


def _require_cycle(g):
    if not is_cycle_shaped(g):
        raise CycleShapeRequired("underlying graph is not a cycle")


def degree_zero_extension(g: DirectedMultigraph, sink: int, toward: int | None = None) -> DirectedMultigraph:
    """Insert a new vertex between ``sink`` and its neighbour ``toward``.

    The arrow ``toward -> sink`` is replaced by ``sink -> new`` and
    ``toward -> new``; the new vertex gets index ``n + 1``.  ``toward``
    defaults to the successor of ``sink`` along :func:`cycle_orientation`.
    """
    _require_cycle(g)
    g.check_vertex(sink)
    if out_degree(g, sink) != 0:
        raise NotASinkVertex(f"vertex {sink} has outgoing arrows")
    nb = g.neighbors()[sink]
    if toward is None:
        toward = cycle_successor(g, sink)
    elif toward not in nb:
        raise GrajacError(f"vertex {toward} is not adjacent to {sink}")
    new = g.vertex_count + 1
    arcs = [a for a in g.arcs if {a.source, a.target} != {sink, toward}]
    arcs += [Arc(sink, new, FORWARD), Arc(toward, new, FORWARD)]
    return build_graph(new, arcs)


def degree_one_extension(g: DirectedMultigraph, v: int) -> DirectedMultigraph:
    """Split the single outgoing arrow of ``v`` through a new vertex ``n + 1``.

    ``v -> w`` becomes ``v -> new -> w``; ``v <-> w`` becomes ``v -> new <-> w``.
    """
    _require_cycle(g)
    g.check_vertex(v)
    if out_degree(g, v) != 1:
        raise DegreeMismatch(f"vertex {v} has out-degree {out_degree(g, v)}, expected 1")
    (out_arc,) = [
        a for a in g.arcs if a.source == v or (a.kind is BIDIRECTIONAL and a.target == v)
    ]
    w = out_arc.target if out_arc.source == v else out_arc.source
    new = g.vertex_count + 1
    arcs = [a for a in g.arcs if a is not out_arc]
    arcs.append(Arc(v, new, FORWARD))
    arcs.append(Arc(new, w, out_arc.kind))
    return build_graph(new, arcs)


def extension_sites(g: DirectedMultigraph) -> list[tuple[str, int, int | None]]:
    """Every eligible ``(kind, vertex, toward)`` for a degree extension.

    ``kind`` is ``"zero"`` (one entry per neighbour of a sink) or ``"one"``.
    """
    nb = g.neighbors()
    sites = []
    for v in g.vertices:
        d = out_degree(g, v)
        if d == 0:
            sites.extend(("zero", v, w) for w in sorted(nb[v]))
        elif d == 1:
            sites.append(("one", v, None))
    return sites


def apply_extension(g, site) -> DirectedMultigraph:
    kind, v, toward = site
    if kind == "zero":
        return degree_zero_extension(g, v, toward)
    return degree_one_extension(g, v)


def two_path_word(n: int, k: int, p1_len: int) -> str:
    p2_len = n - k - p1_len
    if n < 3 or k < 0 or p1_len < 1 or p2_len < 1:
        raise InfeasibleParameters(f"no two-opposite-paths cycle with n={n}, k={k}, p1={p1_len}")
    return "F" * p1_len + "B" * p2_len + "D" * k


def gen_two_opposite_paths(n: int, k: int, p1_len: int = 1) -> DirectedMultigraph:
    """Forward path of ``p1_len`` arrows and backward path of ``n - k - p1_len``
    arrows meeting at a sink, closed by ``k`` bi-directional arrows."""
    return gen_cycle(two_path_word(n, k, p1_len))


def two_path_parameters(n_max: int, n_min: int = 3) -> Iterator[tuple[int, int, int]]:
    for n in range(n_min, n_max + 1):
        for k in range(0, n - 1):
            for p1 in range(1, n - k):
                yield n, k, p1


def gen_short_chain_cycle(n: int) -> DirectedMultigraph:
    """``v_n -> v_1 <- v_2 <- v_3`` with every other rim arrow bi-directional.

    The double chain starts at ``v_2`` and has ``n - 3`` bi-directional
    arrows, so the Jacobian is ``Z_{n-1}``.

    For ``n = 3`` both rules land on one edge; the triangle
    ``v_2 -> v_1, v_2 -> v_3, v_3 -> v_1`` is emitted instead.
    """
    if n < 3:
        raise WordTooShort(f"cycle needs n >= 3, got {n}")
    if n == 3:
        return gen_cycle("BFF")
    return gen_cycle("BB" + "D" * (n - 3) + "F")


def gen_long_chain_cycle(n: int) -> DirectedMultigraph:
    """``v_1`` is a sink; every other vertex has two outgoing arrows.

    This is the longest possible double chain (``n - 2`` bi-directional
    arrows), with Jacobian ``Z_n``.
    """
    if n < 3:
        raise WordTooShort(f"cycle needs n >= 3, got {n}")
    return gen_cycle("B" + "D" * (n - 2) + "F")


class WheelVariant(enum.Enum):
    UNDIRECTED = "undirected"
    SPOKES_IN = "spokes-in"
    SPOKES_OUT = "spokes-out"

    @classmethod
    def parse(cls, value) -> "WheelVariant":
        if isinstance(value, WheelVariant):
            return value
        try:
            return cls(str(value).lower().replace("_", "-"))
        except ValueError:
            raise GrajacError(f"unknown wheel variant {value!r}") from None


def gen_wheel(n: int, variant=WheelVariant.UNDIRECTED) -> DirectedMultigraph:
    """Axle is vertex 1, the bi-directional rim is ``2, 3, ..., n``."""
    variant = WheelVariant.parse(variant)
    if n < 4:
        raise WheelTooSmall(f"wheel needs n >= 4, got {n}")
    rim = list(range(2, n + 1))
    arcs = [Arc(rim[i], rim[(i + 1) % len(rim)], BIDIRECTIONAL) for i in range(len(rim))]
    for v in rim:
        if variant is WheelVariant.UNDIRECTED:
            arcs.append(Arc(1, v, BIDIRECTIONAL))
        elif variant is WheelVariant.SPOKES_IN:
            arcs.append(Arc(v, 1, FORWARD))
        else:
            arcs.append(Arc(1, v, FORWARD))
    return build_graph(n, arcs)


def layer_ranges(sizes: Sequence[int]) -> list[range]:
    out = []
    start = 1
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def gen_multipartite(sizes: Sequence[int]) -> DirectedMultigraph:
    """Single-flow layered graph: every vertex of layer i points to every
    vertex of layer i + 1.  Layers occupy consecutive vertex indices."""
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise GrajacError("a multipartite graph needs at least two layers")
    if any(s < 1 for s in sizes):
        raise EmptyLayer(f"layer sizes must be positive, got {sizes}")
    layers = layer_ranges(sizes)
    arcs = [Arc(u, v) for lo, hi in zip(layers, layers[1:]) for u in lo for v in hi]
    return build_graph(sum(sizes), arcs)


def prufer_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence into ``(child, parent)`` edges, rooted at ``n``."""
    if n == 1:
        return []
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, w = sorted(leaves)
    edges.append((u, w))
    return edges


DIRECTION_RULES = ("random", "to-root", "from-root")


def gen_random_tree(
    n: int,
    seed: int = DEFAULT_SEED,
    bidirectional_prob: float = 0.0,
    direction_rule: str = "random",
) -> DirectedMultigraph:
    """Uniform labelled tree from a seeded Prüfer sequence, then oriented.

    Draw order: ``n - 2`` sequence entries ``below(n) + 1``, then per decoded
    edge one ``unit()`` draw against ``bidirectional_prob`` and, for a
    one-directional edge under the ``random`` rule, one ``below(2)`` draw
    (0 orients child -> parent).
    """
    if n < 1:
        raise GrajacError(f"tree needs n >= 1, got {n}")
    if direction_rule not in DIRECTION_RULES:
        raise GrajacError(f"direction rule must be one of {DIRECTION_RULES}")
    rng = SplitMix64(seed)
    seq = [rng.below(n) + 1 for _ in range(max(n - 2, 0))]
    arcs = []
    for child, parent in prufer_edges(seq, n):
        if rng.chance(bidirectional_prob):
            arcs.append(Arc(child, parent, BIDIRECTIONAL))
            continue
        if direction_rule == "to-root":
            up = True
        elif direction_rule == "from-root":
            up = False
        else:
            up = rng.below(2) == 0
        arcs.append(Arc(child, parent) if up else Arc(parent, child))
    return build_graph(n, arcs)


def matrix_M(n: int) -> IntegerMatrix:
    """Tridiagonal matrix with 2 on the diagonal and -1 beside it."""
    if n < 1:
        raise GrajacError(f"matrix_M needs n >= 1, got {n}")
    return IntegerMatrix(
        [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)], n
    )


def single_term_cycle(n: int, k: int) -> DirectedMultigraph:
    """A directed ``n``-cycle with Jacobian ``Z_k`` for ``1 <= k <= n``.

    Built inductively: the three triangles for ``n = 3``; the undirected
    cycle for ``k = n``; :func:`gen_short_chain_cycle` for ``k = n - 1``; otherwise
    a degree extension of the ``(n - 1, k)`` cycle at its first eligible vertex.
    """
    if n < 3 or not 1 <= k <= n:
        raise InfeasibleParameters(f"need n >= 3 and 1 <= k <= n, got n={n}, k={k}")
    if n == 3:
        return gen_cycle({1: "FFF", 2: "BBF", 3: "DDD"}[k])
    if k == n:
        return gen_cycle("D" * n)
    if k == n - 1:
        return gen_short_chain_cycle(n)
    smaller = single_term_cycle(n - 1, k)
    return apply_extension(smaller, extension_sites(smaller)[0])


def relabel_cycle(g: DirectedMultigraph) -> DirectedMultigraph:
    """Relabel a directed cycle so its vertices run ``1..n`` around the rim."""
    _, word = cycle_orientation(g)
    return gen_cycle(word)
