"""Boundary graphs, partitioning spans, boundary embeddings and the
re-pairing problem.

The pairing graph of a span is a polarity-labelled graph on the
boundary edges: blue edges record pairs merged to a self-loop on the
left leg, red edges pairs merged on the context leg.  Given only the
blue half (from a match), solving the *re-pairing problem* means
choosing the red half so that the connected components correspond to
the arcs of the host graph; each solution parameterizes one pushout
complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .graph import Graph, is_connected, validate_graph
from .morphism import GraphMorphism, classify

POS = "+"
NEG = "-"

DEFAULT_SOLUTION_CAP = 10000


class BoundaryError(Exception):
    pass


class SpanInvariantViolated(BoundaryError):
    pass


class BoundaryEmbeddingInvariantViolated(BoundaryError):
    pass


class CombinatorialLimitExceeded(BoundaryError):
    pass


@dataclass(frozen=True)
class BoundaryGraph:
    """A two-vertex graph with no self-loops and no circles; its two
    vertices are the boundary and the dual boundary."""

    graph: Graph
    boundary: str
    dual_boundary: str

    def polarity(self, e: str) -> str:
        return POS if self.graph.source(e) == self.boundary else NEG

    def boundary_edges(self) -> Tuple[str, ...]:
        return self.graph.sorted_edges()


def validate_boundary_graph(b: BoundaryGraph):
    g = b.graph
    errors = list(validate_graph(g).errors)
    if g.vertices != frozenset((b.boundary, b.dual_boundary)) or b.boundary == b.dual_boundary:
        errors.append(("BadBoundaryVertices",
                       f"expected exactly {{{b.boundary}, {b.dual_boundary}}}"))
    for e in g.sorted_edges():
        if g.source(e) == g.target(e):
            errors.append(("SelfLoopInBoundary", e))
    if g.circles:
        errors.append(("CircleInBoundary", ",".join(g.sorted_circles())))
    return errors


@dataclass(frozen=True)
class PartitioningSpan:
    """L <-l- B -c-> C with l defined on the boundary only and c on the
    dual boundary only; both legs embeddings."""

    b: BoundaryGraph
    left: Graph
    context: Graph
    l: GraphMorphism
    c: GraphMorphism


def validate_span(span: PartitioningSpan):
    errors = validate_boundary_graph(span.b)
    for name, leg, defined, undefined in (
        ("l", span.l, span.b.boundary, span.b.dual_boundary),
        ("c", span.c, span.b.dual_boundary, span.b.boundary),
    ):
        if leg.v(defined) is None:
            errors.append(("LegUndefinedOnItsVertex", f"{name} at {defined}"))
        if leg.v(undefined) is not None:
            errors.append(("LegDefinedOnWrongVertex", f"{name} at {undefined}"))
        if not classify(leg).is_embedding:
            errors.append(("LegNotEmbedding", name))
    if span.l.dom != span.b.graph or span.c.dom != span.b.graph:
        errors.append(("LegDomainMismatch", ""))
    if span.l.cod != span.left or span.c.cod != span.context:
        errors.append(("LegCodomainMismatch", ""))
    return errors


def check_span(span: PartitioningSpan) -> None:
    errors = validate_span(span)
    if errors:
        raise SpanInvariantViolated(errors)


@dataclass(frozen=True)
class BoundaryEmbedding:
    """B -l-> L -m-> G with L connected, m an embedding, and the match
    undefined on the image of the boundary vertex."""

    b: BoundaryGraph
    left: Graph
    host: Graph
    l: GraphMorphism
    m: GraphMorphism

    def image_arc(self, e: str) -> str:
        """(m_A . l_A) applied to a boundary edge."""
        return self.m.amap[self.l.amap[e]]


def validate_boundary_embedding(be: BoundaryEmbedding):
    errors = validate_boundary_graph(be.b)
    if be.l.v(be.b.boundary) is None:
        errors.append(("LegUndefinedOnBoundary", "l"))
    if be.l.v(be.b.dual_boundary) is not None:
        errors.append(("LegDefinedOnDualBoundary", "l"))
    if not classify(be.l).is_embedding:
        errors.append(("LegNotEmbedding", "l"))
    if not classify(be.m).is_embedding:
        errors.append(("MatchNotEmbedding", "m"))
    lb = be.l.v(be.b.boundary)
    if lb is not None and be.m.v(lb) is not None:
        errors.append(("MatchDefinedOnBoundaryImage", lb))
    if not is_connected(be.left):
        errors.append(("LeftNotConnected", ""))
    if be.l.dom != be.b.graph or be.l.cod != be.left:
        errors.append(("LegDomainMismatch", "l"))
    if be.m.dom != be.left or be.m.cod != be.host:
        errors.append(("LegDomainMismatch", "m"))
    return errors


def check_boundary_embedding(be: BoundaryEmbedding) -> None:
    errors = validate_boundary_embedding(be)
    if errors:
        raise BoundaryEmbeddingInvariantViolated(errors)


@dataclass(frozen=True)
class PairingGraph:
    """Nodes are the boundary edges, with polarity from the source map.

    Blue pairs run positive -> negative, red pairs the reverse; a node
    carries at most one edge of each colour, so every component is a
    path or a cycle.
    """

    nodes: Tuple[str, ...]
    polarity: Mapping[str, str]
    blue: frozenset  # of (pos, neg) pairs
    red: frozenset   # of (neg, pos) pairs

    def key(self):
        return (self.nodes, tuple(sorted(self.blue)), tuple(sorted(self.red)))

    def components(self) -> List[Tuple[str, ...]]:
        """Connected components, each as a sorted node tuple."""
        parent = {n: n for n in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in sorted(self.blue) + sorted(self.red):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: Dict[str, list] = {}
        for n in self.nodes:
            groups.setdefault(find(n), []).append(n)
        return [tuple(sorted(groups[r])) for r in sorted(groups)]

    def is_cycle_component(self, comp) -> bool:
        deg = {n: 0 for n in comp}
        for a, b in itertools.chain(self.blue, self.red):
            if a in deg:
                deg[a] += 1
            if b in deg:
                deg[b] += 1
        return all(d == 2 for d in deg.values()) and len(comp) > 0


def _pairs_from_identifications(b: BoundaryGraph, leg: GraphMorphism):
    """Edges of B identified by a span leg, as (pos, neg) pairs."""
    groups: Dict[str, list] = {}
    for e in b.boundary_edges():
        groups.setdefault(leg.amap[e], []).append(e)
    pairs = []
    for img in sorted(groups):
        members = groups[img]
        if len(members) == 1:
            continue
        if len(members) > 2:
            raise SpanInvariantViolated(
                [("TooManyIdentifications", f"{img}: {members}")])
        e1, e2 = members
        if b.polarity(e1) == b.polarity(e2):
            raise SpanInvariantViolated(
                [("SamePolarityIdentification", f"{img}: {members}")])
        pos, neg = (e1, e2) if b.polarity(e1) == POS else (e2, e1)
        pairs.append((pos, neg))
    return pairs


def pairing_graph(span: PartitioningSpan) -> PairingGraph:
    """Both halves: blue from the left leg, red from the context leg."""
    check_span(span)
    b = span.b
    nodes = b.boundary_edges()
    polarity = {e: b.polarity(e) for e in nodes}
    blue = frozenset(_pairs_from_identifications(b, span.l))
    red = frozenset((n, p) for p, n in _pairs_from_identifications(b, span.c))
    return PairingGraph(nodes, polarity, blue, red)


def blue_half(be: BoundaryEmbedding) -> PairingGraph:
    """The half pairing graph a boundary embedding determines."""
    check_boundary_embedding(be)
    b = be.b
    nodes = b.boundary_edges()
    polarity = {e: b.polarity(e) for e in nodes}
    try:
        blue = frozenset(_pairs_from_identifications(b, be.l))
    except SpanInvariantViolated as exc:
        raise BoundaryEmbeddingInvariantViolated(exc.args[0]) from exc
    return PairingGraph(nodes, polarity, blue, frozenset())


def arc_classes(be: BoundaryEmbedding) -> Dict[str, Tuple[str, ...]]:
    """k(a): the boundary edges mapping to each host arc, keyed by arc.

    Only non-empty classes appear.
    """
    out: Dict[str, list] = {}
    for e in be.b.boundary_edges():
        out.setdefault(be.image_arc(e), []).append(e)
    return {a: tuple(sorted(es)) for a, es in sorted(out.items())}


def _class_arrangements(be: BoundaryEmbedding, half: PairingGraph, a: str,
                        members: Tuple[str, ...]):
    """All red-edge sets completing one class into a path or a cycle.

    Blue pairs and lone nodes are the building blocks; a red edge runs
    from a negative node to a positive one, so a completed component is
    a directed alternating path (host edges) or cycle (host circles).
    Yields tuples of (neg, pos) red pairs, identity arrangement first.
    """
    member_set = set(members)
    pairs = sorted((p, n) for p, n in half.blue if p in member_set)
    paired = {x for pn in pairs for x in pn}
    lone = [n for n in members if n not in paired]
    lone_pos = [n for n in lone if half.polarity[n] == POS]
    lone_neg = [n for n in lone if half.polarity[n] == NEG]

    if be.host.is_circle(a):
        if lone:
            raise BoundaryEmbeddingInvariantViolated(
                [("LoneNodeInCircleClass", f"{a}: {lone}")])
        if not pairs:
            yield ()
            return
        first, rest = pairs[0], pairs[1:]
        for perm in itertools.permutations(rest):
            order = (first,) + perm
            red = []
            for i, (_, n) in enumerate(order):
                nxt_pos = order[(i + 1) % len(order)][0]
                red.append((n, nxt_pos))
            yield tuple(sorted(red))
        return

    # Host edge: a single directed path.  A lone negative node can only
    # start the path, a lone positive node can only end it.
    if len(lone_pos) > 1 or len(lone_neg) > 1:
        raise BoundaryEmbeddingInvariantViolated(
            [("TooManyLooseEnds", f"{a}: {lone}")])
    for perm in itertools.permutations(pairs):
        red = []
        prev_out = lone_neg[0] if lone_neg else None
        for p, n in perm:
            if prev_out is not None:
                red.append((prev_out, p))
            prev_out = n
        if lone_pos and prev_out is not None:
            red.append((prev_out, lone_pos[0]))
        yield tuple(sorted(red))


def enumerate_re_pairings(be: BoundaryEmbedding,
                          cap: int = DEFAULT_SOLUTION_CAP):
    """All solutions of the re-pairing problem, deduplicated, in
    deterministic order; the canonical solution comes first."""
    check_boundary_embedding(be)
    half = blue_half(be)
    classes = arc_classes(be)
    per_class = [
        list(dict.fromkeys(_class_arrangements(be, half, a, members)))
        for a, members in classes.items()
    ]
    solutions = []
    seen = set()
    for combo in itertools.product(*per_class):
        red = frozenset(pair for reds in combo for pair in reds)
        if red in seen:
            continue
        seen.add(red)
        solutions.append(PairingGraph(half.nodes, half.polarity, half.blue, red))
        if len(solutions) > cap:
            raise CombinatorialLimitExceeded(
                f"more than {cap} re-pairing solutions")
    return solutions


def solve_re_pairing(be: BoundaryEmbedding) -> PairingGraph:
    """The canonical solution: identity arrangement in id order."""
    check_boundary_embedding(be)
    half = blue_half(be)
    red = []
    for a, members in arc_classes(be).items():
        red.extend(next(_class_arrangements(be, half, a, members)))
    return PairingGraph(half.nodes, half.polarity, half.blue, frozenset(red))


def red_matched_pairs(solution: PairingGraph) -> List[Tuple[str, str]]:
    return sorted(solution.red)


def red_unmatched_nodes(solution: PairingGraph) -> List[str]:
    touched = {x for pair in solution.red for x in pair}
    return [n for n in solution.nodes if n not in touched]
