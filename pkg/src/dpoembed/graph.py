"""Directed graphs with circles.

A graph here is a set of vertices, a set of directed edges with total
source/target maps, and a set of *circles*: closed arcs with neither
source nor target.  Edges and circles together form the *arcs* of the
graph.  All identifiers are strings, totally ordered; every iteration
in this package is in id order so that all derived algorithms are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple

SRC = "src"
TGT = "tgt"


class Flag(NamedTuple):
    """An incidence of an edge end at a vertex.

    A self-loop at v contributes two distinct flags at v, one per end.
    """

    edge: str
    end: str  # SRC or TGT

    def __str__(self) -> str:
        return f"{self.edge}.{self.end}"


class GraphError(Exception):
    pass


class UnknownVertex(GraphError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    errors: Tuple[Tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> Tuple[str, ...]:
        return tuple(code for code, _ in self.errors)


@dataclass(frozen=True)
class Graph:
    """A graph with circles: (V, E, O, s, t).

    Immutable after construction; edges maps edge id to (source, target).
    """

    vertices: frozenset
    edges: Mapping[str, Tuple[str, str]]
    circles: frozenset

    def source(self, e: str) -> str:
        return self.edges[e][0]

    def target(self, e: str) -> str:
        return self.edges[e][1]

    def is_edge(self, a: str) -> bool:
        return a in self.edges

    def is_circle(self, a: str) -> bool:
        return a in self.circles

    def arcs(self) -> Tuple[str, ...]:
        """All arc ids, edges and circles, in id order."""
        return tuple(sorted(self.edges)) + tuple(sorted(self.circles))

    def sorted_vertices(self) -> Tuple[str, ...]:
        return tuple(sorted(self.vertices))

    def sorted_edges(self) -> Tuple[str, ...]:
        return tuple(sorted(self.edges))

    def sorted_circles(self) -> Tuple[str, ...]:
        return tuple(sorted(self.circles))

    def __repr__(self) -> str:
        es = ", ".join(
            f"{e}:{s}->{t}" for e, (s, t) in sorted(self.edges.items())
        )
        return (
            f"Graph(V={sorted(self.vertices)}, E=[{es}], "
            f"O={sorted(self.circles)})"
        )


def graph(
    vertices: Iterable[str] = (),
    edges: Optional[Mapping[str, Tuple[str, str]]] = None,
    circles: Iterable[str] = (),
) -> Graph:
    """Normalizing constructor; does not validate."""
    return Graph(
        vertices=frozenset(vertices),
        edges={e: (s, t) for e, (s, t) in sorted((edges or {}).items())},
        circles=frozenset(circles),
    )


EMPTY_GRAPH = graph()


def validate_graph(g: Graph) -> ValidationReport:
    """Check edge endpoints exist and arc ids are unique across sorts."""
    errors = []
    for e in g.sorted_edges():
        s, t = g.edges[e]
        if s not in g.vertices:
            errors.append(("DanglingEndpoint", f"edge {e}: source {s}"))
        if t not in g.vertices:
            errors.append(("DanglingEndpoint", f"edge {e}: target {t}"))
    for a in sorted(set(g.edges) & g.circles):
        errors.append(("DuplicateId", f"arc id {a} is both an edge and a circle"))
    return ValidationReport(tuple(errors))


def flags_at(g: Graph, v: str) -> frozenset:
    """The flags incident at v; a self-loop contributes both its flags."""
    if v not in g.vertices:
        raise UnknownVertex(v)
    out = set()
    for e in g.edges:
        s, t = g.edges[e]
        if s == v:
            out.add(Flag(e, SRC))
        if t == v:
            out.add(Flag(e, TGT))
    return frozenset(out)


def degree(g: Graph, v: str) -> int:
    """Number of flags at v; self-loops count twice."""
    return len(flags_at(g, v))


def flag_vertex(g: Graph, f: Flag) -> str:
    """The vertex a flag is incident at."""
    return g.source(f.edge) if f.end == SRC else g.target(f.edge)


def all_flags(g: Graph) -> Tuple[Flag, ...]:
    out = []
    for e in g.sorted_edges():
        out.append(Flag(e, SRC))
        out.append(Flag(e, TGT))
    return tuple(out)


def induced_subgraph(g: Graph, vs: Iterable[str]) -> Graph:
    """Subgraph on vs keeping edges with both endpoints in vs; drops circles."""
    keep = set(vs)
    unknown = keep - set(g.vertices)
    if unknown:
        raise UnknownVertex(sorted(unknown)[0])
    edges = {
        e: (s, t) for e, (s, t) in g.edges.items() if s in keep and t in keep
    }
    return graph(keep, edges)


def connected_components(g: Graph):
    """Partition vertices and arcs by edge adjacency.

    Returns a list of (vertex frozenset, arc frozenset) pairs in
    deterministic order.  Each circle is a component of its own.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for e in g.sorted_edges():
        s, t = g.edges[e]
        union(s, t)

    groups = {}
    for v in g.sorted_vertices():
        groups.setdefault(find(v), set()).add(v)
    comps = []
    for root in sorted(groups):
        vs = groups[root]
        arcs = {e for e in g.edges if g.source(e) in vs}
        comps.append((frozenset(vs), frozenset(arcs)))
    for o in g.sorted_circles():
        comps.append((frozenset(), frozenset([o])))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1
