"""From graphs to algebra: Laplacians, Picard groups, strong components.

Also holds the structural detectors used for directed cycles (cycle
traversal, double chains, two-opposite-path decompositions).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count

from .abelian import AbelianGroup, cokernel, torsion
from .errors import CycleShapeRequired, Disconnected, NotUndirected
from .graph import BIDIRECTIONAL, FORWARD, DirectedMultigraph
from .linalg import IntegerMatrix, determinant


def laplacian(g: DirectedMultigraph) -> IntegerMatrix:
    """Out-degree matrix minus the directed adjacency matrix."""
    n = g.vertex_count
    m = [[0] * n for _ in range(n)]
    for a in g.arcs:
        s, t = a.source - 1, a.target - 1
        m[s][s] += a.mult
        m[s][t] -= a.mult
        if a.kind is BIDIRECTIONAL:
            m[t][t] += a.mult
            m[t][s] -= a.mult
    return IntegerMatrix(m, n)


def picard_group(g: DirectedMultigraph) -> AbelianGroup:
    # coker(L^T) and coker(L) share the Smith normal form
    return cokernel(laplacian(g))


def jacobian(g: DirectedMultigraph) -> AbelianGroup:
    return torsion(picard_group(g))


# --- strong components ---------------------------------------------------


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[frozenset[int], ...]
    terminal_flags: tuple[bool, ...]

    @property
    def terminal_components(self) -> list[frozenset[int]]:
        return [c for c, t in zip(self.components, self.terminal_flags) if t]

    def component_of(self, v: int) -> int:
        for i, c in enumerate(self.components):
            if v in c:
                return i
        raise KeyError(v)


def _tarjan(succ: dict[int, list[int]]) -> list[set[int]]:
    # iterative variant of Tarjan's algorithm; recursion depth would cap n
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = count()
    out = []
    for root in succ:
        if root in index:
            continue
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def scc(g: DirectedMultigraph) -> SccDecomposition:
    """Strong components ordered by their smallest vertex, with terminal flags."""
    succ = {v: sorted(ws) for v, ws in g.successors().items()}
    comps = sorted(_tarjan(succ), key=min)
    where = {v: i for i, c in enumerate(comps) for v in c}
    terminal = [True] * len(comps)
    for v, ws in succ.items():
        for w in ws:
            if where[v] != where[w]:
                terminal[where[v]] = False
    return SccDecomposition(tuple(frozenset(c) for c in comps), tuple(terminal))


def predicted_rank(g: DirectedMultigraph) -> int:
    """Number of terminal strong components."""
    return sum(scc(g).terminal_flags)


def find_global_sink(g: DirectedMultigraph):
    """The vertex of out-degree 0 reachable from every vertex, or None."""
    succ = g.successors()
    sinks = [v for v in g.vertices if not succ[v]]
    if len(sinks) != 1:
        return None
    sink = sinks[0]
    pred: dict[int, set[int]] = {v: set() for v in g.vertices}
    for v, ws in succ.items():
        for w in ws:
            pred[w].add(v)
    seen = {sink}
    todo = [sink]
    while todo:
        for u in pred[todo.pop()]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return sink if len(seen) == g.vertex_count else None


def spanning_tree_count(g: DirectedMultigraph) -> int:
    """Matrix-tree cofactor: det of the Laplacian with row and column 1 removed."""
    if not g.is_undirected():
        raise NotUndirected("spanning trees are counted for undirected graphs only")
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    return determinant(laplacian(g).minor_matrix(0, 0))


# --- directed cycles -----------------------------------------------------


def is_cycle_shaped(g: DirectedMultigraph) -> bool:
    if g.vertex_count < 3 or not g.is_connected():
        return False
    pairs = {}
    for a in g.arcs:
        key = (min(a.source, a.target), max(a.source, a.target))
        pairs[key] = pairs.get(key, 0) + a.mult
    if any(m != 1 for m in pairs.values()):
        return False
    return all(len(ws) == 2 for ws in g.neighbors().values())


def cycle_orientation(g: DirectedMultigraph) -> tuple[tuple[int, ...], str]:
    """Traverse a directed cycle and describe it as an orientation word.

    The walk starts at vertex 1 and first steps to its smaller neighbour.
    Letter ``i`` describes the edge between ``order[i]`` and ``order[i+1]``
    (cyclically): ``F`` for an arrow along the walk, ``B`` against it,
    ``D`` for a bi-directional arrow.
    """
    if not is_cycle_shaped(g):
        raise CycleShapeRequired("underlying graph is not a cycle")
    nb = g.neighbors()
    order = [1, min(nb[1])]
    while len(order) < g.vertex_count:
        prev, cur = order[-2], order[-1]
        order.append(next(w for w in nb[cur] if w != prev))
    kinds = {}
    for a in g.arcs:
        kinds[(a.source, a.target)] = a.kind
    letters = []
    n = len(order)
    for i in range(n):
        u, w = order[i], order[(i + 1) % n]
        if kinds.get((u, w)) is FORWARD:
            letters.append("F")
        elif kinds.get((w, u)) is FORWARD:
            letters.append("B")
        else:
            letters.append("D")
    return tuple(order), "".join(letters)


def cycle_successor(g: DirectedMultigraph, v: int) -> int:
    order, _ = cycle_orientation(g)
    return order[(order.index(v) + 1) % len(order)]


@dataclass(frozen=True)
class DoubleChain:
    """A run ``v0 <- v1 <-> ... <-> v_{k+1} -> v_{k+2}`` inside a cycle.

    ``length`` is the number ``k`` of bi-directional arrows in the run;
    ``vertices`` lists the window from ``v0`` to the far end (the two ends
    coincide when the window covers the whole cycle).
    """

    length: int
    vertices: tuple[int, ...]


def _rotations(word: str):
    for r in range(len(word)):
        yield r, word[r:] + word[:r]


def double_chain(g: DirectedMultigraph) -> DoubleChain | None:
    """The double chain of a directed cycle with a global sink, else None."""
    order, word = cycle_orientation(g)
    if find_global_sink(g) is None:
        return None
    n = len(word)
    for r, rot in _rotations(word):
        m = re.match(r"B(D*)F", rot)
        if m:
            k = len(m.group(1))
            return DoubleChain(k, tuple(order[(r + i) % n] for i in range(k + 3)))
    return None


@dataclass(frozen=True)
class TwoOppositePaths:
    forward_length: int
    backward_length: int
    bidirectional_count: int
    sink: int


def is_two_opposite_paths(g: DirectedMultigraph) -> TwoOppositePaths | None:
    """Decompose a cycle as a forward run, a backward run into a shared sink,
    and bi-directional arrows elsewhere.  Returns None if impossible."""
    order, word = cycle_orientation(g)
    n = len(word)
    for r, rot in _rotations(word):
        m = re.fullmatch(r"(F+)(B+)(D*)", rot)
        if m:
            p1, p2, k = (len(x) for x in m.groups())
            return TwoOppositePaths(p1, p2, k, order[(r + p1) % n])
    return None
