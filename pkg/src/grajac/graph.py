"""Finite loop-free directed multigraphs.

A graph has vertices ``1..n`` and a multiset of arrows.  An arrow is either
one-directional (``ArcKind.FORWARD``, from ``source`` to ``target``) or
bi-directional (``ArcKind.BIDIRECTIONAL``).  A bi-directional arrow is a
single arrow: it counts once towards the out-degree of *each* endpoint.

Graphs are immutable and always stored canonically: bi-directional arrows
have ``source < target``, parallel arrows of the same kind are merged into
one :class:`Arc` with summed multiplicity, and arcs are sorted by
``(source, target, kind)``.
"""
from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    GraphFormatError,
    LastVertex,
    LoopArc,
    VertexOutOfRange,
    ZeroMultiplicity,
)


class ArcKind(enum.Enum):
    FORWARD = "dir"
    BIDIRECTIONAL = "bi"

    @classmethod
    def parse(cls, value) -> "ArcKind":
        if isinstance(value, ArcKind):
            return value
        try:
            return _KIND_ALIASES[str(value).lower()]
        except KeyError:
            raise GraphFormatError(f"unknown arc kind {value!r}") from None


_KIND_ALIASES = {
    "dir": ArcKind.FORWARD,
    "forward": ArcKind.FORWARD,
    "f": ArcKind.FORWARD,
    "bi": ArcKind.BIDIRECTIONAL,
    "bidirectional": ArcKind.BIDIRECTIONAL,
    "d": ArcKind.BIDIRECTIONAL,
}

FORWARD = ArcKind.FORWARD
BIDIRECTIONAL = ArcKind.BIDIRECTIONAL


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    kind: ArcKind = FORWARD
    mult: int = 1

    def __lt__(self, other):
        return self._key() < other._key()

    def _key(self):
        return (self.source, self.target, self.kind.value, self.mult)

    def tails(self) -> tuple[int, ...]:
        """Vertices that have this arrow as an outgoing arrow."""
        if self.kind is BIDIRECTIONAL:
            return (self.source, self.target)
        return (self.source,)


def _coerce_arc(a) -> Arc:
    if isinstance(a, Arc):
        return a
    a = tuple(a)
    if len(a) == 2:
        return Arc(int(a[0]), int(a[1]))
    if len(a) == 3:
        return Arc(int(a[0]), int(a[1]), ArcKind.parse(a[2]))
    if len(a) == 4:
        return Arc(int(a[0]), int(a[1]), ArcKind.parse(a[2]), int(a[3]))
    raise GraphFormatError(f"cannot interpret {a!r} as an arc")


@dataclass(frozen=True)
class DirectedMultigraph:
    """Canonical directed multigraph; build instances with :func:`build_graph`."""

    vertex_count: int
    arcs: tuple[Arc, ...]

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.vertex_count:
            raise VertexOutOfRange(f"vertex {v} not in 1..{self.vertex_count}")

    def out_arrows(self, v: int) -> Iterator[tuple[int, int]]:
        """Yield ``(w, multiplicity)`` for every arrow leaving ``v``."""
        for a in self.arcs:
            if a.source == v:
                yield a.target, a.mult
            elif a.kind is BIDIRECTIONAL and a.target == v:
                yield a.source, a.mult

    def successors(self) -> dict[int, set[int]]:
        succ: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a in self.arcs:
            succ[a.source].add(a.target)
            if a.kind is BIDIRECTIONAL:
                succ[a.target].add(a.source)
        return succ

    def neighbors(self) -> dict[int, set[int]]:
        """Adjacency of the underlying undirected graph (ignoring multiplicity)."""
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a in self.arcs:
            nb[a.source].add(a.target)
            nb[a.target].add(a.source)
        return nb

    def arrow_count(self) -> int:
        return sum(a.mult for a in self.arcs)

    def is_undirected(self) -> bool:
        return all(a.kind is BIDIRECTIONAL for a in self.arcs)

    def is_connected(self) -> bool:
        nb = self.neighbors()
        seen = {1}
        stack = [1]
        while stack:
            for w in nb[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def __str__(self) -> str:
        parts = []
        for a in self.arcs:
            sym = "->" if a.kind is FORWARD else "<->"
            m = f" x{a.mult}" if a.mult > 1 else ""
            parts.append(f"{a.source}{sym}{a.target}{m}")
        return f"Graph(n={self.vertex_count}: {', '.join(parts) or 'no arcs'})"


def build_graph(n: int, arcs: Iterable = ()) -> DirectedMultigraph:
    """Validate and canonicalize.

    ``arcs`` may contain :class:`Arc` objects or tuples
    ``(source, target[, kind[, mult]])`` where ``kind`` is an
    :class:`ArcKind` or one of ``"dir"``/``"bi"``.
    """
    if n < 1:
        raise VertexOutOfRange(f"a graph needs at least one vertex, got n={n}")
    merged: dict[tuple[int, int, ArcKind], int] = defaultdict(int)
    for raw in arcs:
        a = _coerce_arc(raw)
        if a.source == a.target:
            raise LoopArc(f"loop at vertex {a.source}")
        for v in (a.source, a.target):
            if not 1 <= v <= n:
                raise VertexOutOfRange(f"vertex {v} not in 1..{n}")
        if a.mult < 1:
            raise ZeroMultiplicity(f"arc {a.source}-{a.target} has multiplicity {a.mult}")
        s, t = a.source, a.target
        if a.kind is BIDIRECTIONAL and s > t:
            s, t = t, s
        merged[(s, t, a.kind)] += a.mult
    canon = sorted(Arc(s, t, k, m) for (s, t, k), m in merged.items())
    return DirectedMultigraph(n, tuple(canon))


def decompose(g: DirectedMultigraph) -> list[Arc]:
    return list(g.arcs)


def underlying_graph(g: DirectedMultigraph) -> DirectedMultigraph:
    """Every arrow, whatever its kind, becomes one bi-directional arrow."""
    return build_graph(
        g.vertex_count, [Arc(a.source, a.target, BIDIRECTIONAL, a.mult) for a in g.arcs]
    )


def out_degree(g: DirectedMultigraph, v: int) -> int:
    g.check_vertex(v)
    return sum(m for _, m in g.out_arrows(v))


def delete_vertex(g: DirectedMultigraph, v: int) -> DirectedMultigraph:
    """Remove ``v`` and its arrows; vertices above ``v`` shift down by one."""
    g.check_vertex(v)
    if g.vertex_count == 1:
        raise LastVertex("cannot delete the only vertex")

    def shift(u):
        return u - 1 if u > v else u

    kept = [
        Arc(shift(a.source), shift(a.target), a.kind, a.mult)
        for a in g.arcs
        if v not in (a.source, a.target)
    ]
    return build_graph(g.vertex_count - 1, kept)


def add_arcs(g: DirectedMultigraph, arcs: Iterable, extra_vertices: int = 0) -> DirectedMultigraph:
    return build_graph(g.vertex_count + extra_vertices, list(g.arcs) + list(arcs))


def remove_arc(g: DirectedMultigraph, arc) -> DirectedMultigraph:
    """Remove one arrow (multiplicity one) matching ``arc``."""
    a = _coerce_arc(arc)
    s, t = a.source, a.target
    if a.kind is BIDIRECTIONAL and s > t:
        s, t = t, s
    out = []
    found = False
    for b in g.arcs:
        if not found and (b.source, b.target, b.kind) == (s, t, a.kind):
            found = True
            if b.mult > 1:
                out.append(Arc(b.source, b.target, b.kind, b.mult - 1))
            continue
        out.append(b)
    if not found:
        raise GraphFormatError(f"no arc {s}-{t} of kind {a.kind.value}")
    return build_graph(g.vertex_count, out)


# --- JSON ---------------------------------------------------------------


def graph_to_json(g: DirectedMultigraph) -> dict:
    return {
        "vertices": g.vertex_count,
        "arcs": [
            {"from": a.source, "to": a.target, "kind": a.kind.value, "mult": a.mult}
            for a in g.arcs
        ],
    }


def graph_from_json(obj) -> DirectedMultigraph:
    try:
        n = obj["vertices"]
        raw = obj.get("arcs", [])
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphFormatError("'vertices' must be an integer")
        arcs = []
        for item in raw:
            arcs.append(
                Arc(
                    int(item["from"]),
                    int(item["to"]),
                    ArcKind.parse(item.get("kind", "dir")),
                    int(item.get("mult", 1)),
                )
            )
    except (KeyError, TypeError, AttributeError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None
    return build_graph(n, arcs)


def dumps_graph(g: DirectedMultigraph) -> str:
    return json.dumps(graph_to_json(g))


def loads_graph(text: str) -> DirectedMultigraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    return graph_from_json(obj)
