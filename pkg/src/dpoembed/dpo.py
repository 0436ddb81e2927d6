"""The rewriting engine: pushouts of partitioning spans, pushout
complements of boundary embeddings, and full DPO rewrite steps.

All maps are explicit tables; embeddings are never treated as
inclusions.  Pushout element ids are prefixed by side ("L." / "C."),
with identified arcs named after the least member of their class, so
traces stay readable and every run is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .graph import Graph, graph, induced_subgraph, validate_graph
from .morphism import GraphMorphism, classify, morphism
from .boundary import (
    POS,
    BoundaryEmbedding,
    BoundaryGraph,
    PairingGraph,
    PartitioningSpan,
    SpanInvariantViolated,
    blue_half,
    check_boundary_embedding,
    check_span,
    enumerate_re_pairings,
    red_matched_pairs,
    validate_boundary_embedding,
    red_unmatched_nodes,
    solve_re_pairing,
    validate_boundary_graph,
)


class DpoError(Exception):
    pass


class SolutionMismatch(DpoError):
    pass


class NotABoundaryEmbedding(DpoError):
    pass


class SolutionIndexOutOfRange(DpoError):
    pass


class SizeLimitExceeded(DpoError):
    pass


@dataclass(frozen=True)
class PushoutResult:
    graph: Graph
    m: GraphMorphism  # L -> G
    g: GraphMorphism  # C -> G
    arc_classes: Mapping[str, Tuple[str, ...]]  # pushout arc -> B edges


def _side_key(member):
    side, ident = member
    return (0 if side == "L" else 1, ident)


def pushout(span: PartitioningSpan) -> PushoutResult:
    """Glue left and context along the boundary.

    Vertices are the non-boundary vertices of both sides; arcs are the
    quotient of both arc sets by the identifications the boundary edges
    induce.  An arc's endpoints come from whichever side defines them
    away from the boundary image; arcs left with no endpoints at all
    become circles.
    """
    check_span(span)
    b, left, ctx = span.b, span.left, span.context
    vb_l = span.l.vmap[b.boundary]
    vb_c = span.c.vmap[b.dual_boundary]

    members = [("L", a) for a in left.arcs()] + [("C", a) for a in ctx.arcs()]
    parent = {m: m for m in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in b.boundary_edges():
        ra = find(("L", span.l.amap[e]))
        rb = find(("C", span.c.amap[e]))
        if ra != rb:
            keep, drop = sorted((ra, rb), key=_side_key)
            parent[drop] = keep

    classes: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}
    for m in members:
        classes.setdefault(find(m), []).append(m)

    def class_id(root) -> str:
        side, ident = min(classes[root], key=_side_key)
        return f"{side}.{ident}"

    vertices = {f"L.{v}" for v in left.vertices if v != vb_l} | {
        f"C.{v}" for v in ctx.vertices if v != vb_c
    }

    sources: Dict[str, set] = {}
    targets: Dict[str, set] = {}
    for root, mems in classes.items():
        cid = class_id(root)
        sources.setdefault(cid, set())
        targets.setdefault(cid, set())
        for side, a in mems:
            g_side, boundary_v = (left, vb_l) if side == "L" else (ctx, vb_c)
            if g_side.is_edge(a):
                s, t = g_side.edges[a]
                if s != boundary_v:
                    sources[cid].add(f"{side}.{s}")
                if t != boundary_v:
                    targets[cid].add(f"{side}.{t}")

    edges = {}
    circles = set()
    for root in classes:
        cid = class_id(root)
        src, tgt = sources[cid], targets[cid]
        # Single-valuedness is a theorem about partitioning spans; a
        # failure here means the span invariants were violated.
        if len(src) > 1 or len(tgt) > 1:
            raise SpanInvariantViolated(
                [("SourceMapNotSingleValued", cid)])
        if bool(src) != bool(tgt):
            raise SpanInvariantViolated(
                [("HalfDefinedEndpoints", cid)])
        if src:
            edges[cid] = (next(iter(src)), next(iter(tgt)))
        else:
            circles.add(cid)

    result = graph(vertices, edges, circles)
    assert validate_graph(result).ok

    cid_of = {m: class_id(find(m)) for m in members}
    m_map = morphism(
        left, result,
        {v: f"L.{v}" for v in left.vertices if v != vb_l},
        {a: cid_of[("L", a)] for a in left.arcs()},
    )
    g_map = morphism(
        ctx, result,
        {v: f"C.{v}" for v in ctx.vertices if v != vb_c},
        {a: cid_of[("C", a)] for a in ctx.arcs()},
    )

    preimages: Dict[str, List[str]] = {cid: [] for cid in set(cid_of.values())}
    for e in b.boundary_edges():
        preimages[cid_of[("L", span.l.amap[e])]].append(e)
    classes_out = {cid: tuple(sorted(es)) for cid, es in preimages.items()}

    return PushoutResult(result, m_map, g_map, classes_out)


@dataclass(frozen=True)
class ComplementResult:
    context: Graph
    dual_boundary: str
    c: GraphMorphism  # B -> C
    g: GraphMorphism  # C -> G
    solution: PairingGraph

    def span(self, l: GraphMorphism, b: BoundaryGraph,
             left: Graph) -> PartitioningSpan:
        return PartitioningSpan(b, left, self.context, l, self.c)


def _fresh(base: str, used) -> str:
    name = base
    while name in used:
        name += "+"
    return name


def pushout_complement(be: BoundaryEmbedding,
                       solution: Optional[PairingGraph] = None
                       ) -> ComplementResult:
    """Remove the matched region, leaving a context graph over the dual
    boundary, wired up according to the given re-pairing solution."""
    check_boundary_embedding(be)
    if solution is None:
        solution = solve_re_pairing(be)
    else:
        half = blue_half(be)
        if (solution.nodes != half.nodes
                or solution.blue != half.blue
                or dict(solution.polarity) != dict(half.polarity)):
            raise SolutionMismatch("solution does not extend this blue half")

    host, b = be.host, be.b
    matched_vertices = set(be.m.vmap.values())
    survivors = set(host.vertices) - matched_vertices
    dual = _fresh(b.dual_boundary, survivors)

    kept = induced_subgraph(host, survivors)
    image_arcs = set(be.m.amap.values())
    # matched arcs can touch surviving vertices (a matched self-loop at
    # an unmatched vertex), so filter by arc image, not just endpoints
    edges = {e: st for e, st in kept.edges.items() if e not in image_arcs}
    circles = {o for o in host.circles if o not in image_arcs}

    c_amap: Dict[str, str] = {}
    g_amap: Dict[str, str] = {a: a for a in itertools.chain(edges, circles)}
    used = set(edges) | circles

    for neg, pos in red_matched_pairs(solution):
        loop = _fresh(min(neg, pos), used)
        used.add(loop)
        edges[loop] = (dual, dual)
        c_amap[neg] = loop
        c_amap[pos] = loop
        g_amap[loop] = be.image_arc(neg)

    for e in red_unmatched_nodes(solution):
        new = _fresh(e, used)
        used.add(new)
        a = be.image_arc(e)
        if solution.polarity[e] == POS:
            edges[new] = (host.source(a), dual)
        else:
            edges[new] = (dual, host.target(a))
        c_amap[e] = new
        g_amap[new] = a

    context = graph(survivors | {dual}, edges, circles)
    c_map = morphism(b.graph, context, {b.dual_boundary: dual}, c_amap)
    g_map = morphism(context, host, {v: v for v in survivors}, g_amap)
    return ComplementResult(context, dual, c_map, g_map, solution)


@dataclass(frozen=True)
class RewriteRule:
    """L <= B => R: both legs satisfy the left-leg conditions of a
    partitioning span on the boundary vertex."""

    b: BoundaryGraph
    left: Graph
    right: Graph
    l: GraphMorphism
    r: GraphMorphism


def validate_rule(rule: RewriteRule):
    errors = validate_boundary_graph(rule.b)
    for name, leg in (("l", rule.l), ("r", rule.r)):
        if leg.v(rule.b.boundary) is None:
            errors.append(("LegUndefinedOnBoundary", name))
        if leg.v(rule.b.dual_boundary) is not None:
            errors.append(("LegDefinedOnDualBoundary", name))
        if not classify(leg).is_embedding:
            errors.append(("LegNotEmbedding", name))
    return errors


@dataclass(frozen=True)
class RewriteTrace:
    boundary: BoundaryGraph
    match: GraphMorphism
    solution: PairingGraph
    complement: ComplementResult
    result_pushout: PushoutResult


def rewrite(rule: RewriteRule, host: Graph, match: GraphMorphism,
            solution_index: Optional[int] = None):
    """One DPO step: complement of the match, then pushout against the
    right-hand side.  Returns (result graph, trace)."""
    be = BoundaryEmbedding(rule.b, rule.left, host, rule.l, match)
    errors = validate_rule(rule) + validate_boundary_embedding(be)
    if errors:
        raise NotABoundaryEmbedding(errors)

    if solution_index is None:
        solution = solve_re_pairing(be)
    else:
        solutions = enumerate_re_pairings(be)
        if not 0 <= solution_index < len(solutions):
            raise SolutionIndexOutOfRange(
                f"{solution_index} not in [0, {len(solutions)})")
        solution = solutions[solution_index]

    comp = pushout_complement(be, solution)
    right_span = PartitioningSpan(rule.b, rule.right, comp.context,
                                  rule.r, comp.c)
    po = pushout(right_span)
    trace = RewriteTrace(rule.b, match, solution, comp, po)
    return po.graph, trace


def iso_check(g1: Graph, g2: Graph, max_vertices: int = 64):
    """Search for an isomorphism preserving sources and targets.

    Exhaustive backtracking with degree-signature pruning; intended for
    desk-scale graphs.  Returns (vmap, amap) or None.
    """
    if len(g1.vertices) > max_vertices or len(g2.vertices) > max_vertices:
        raise SizeLimitExceeded(max_vertices)
    if (len(g1.vertices) != len(g2.vertices)
            or len(g1.edges) != len(g2.edges)
            or len(g1.circles) != len(g2.circles)):
        return None

    def signature(g: Graph, v: str):
        out = sum(1 for e in g.edges if g.source(e) == v)
        inn = sum(1 for e in g.edges if g.target(e) == v)
        loops = sum(1 for e in g.edges if g.edges[e] == (v, v))
        return (out, inn, loops)

    sig1 = {v: signature(g1, v) for v in g1.vertices}
    sig2 = {v: signature(g2, v) for v in g2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return None

    def pair_counts(g: Graph):
        counts: Dict[Tuple[str, str], int] = {}
        for e in g.edges:
            counts[g.edges[e]] = counts.get(g.edges[e], 0) + 1
        return counts

    counts2 = pair_counts(g2)
    order = sorted(g1.vertices, key=lambda v: (sig1[v], v))
    vmap: Dict[str, str] = {}
    used = set()

    def consistent(v, w):
        # Edge-pair counts between already-mapped vertices must match.
        for u, x in vmap.items():
            for a, bb in (((u, v), (x, w)), ((v, u), (w, x))):
                c1 = sum(1 for e in g1.edges if g1.edges[e] == a)
                if c1 != counts2.get(bb, 0):
                    return False
        c1 = sum(1 for e in g1.edges if g1.edges[e] == (v, v))
        return c1 == counts2.get((w, w), 0)

    def backtrack(i):
        if i == len(order):
            return True
        v = order[i]
        for w in sorted(g2.vertices):
            if w in used or sig2[w] != sig1[v]:
                continue
            if not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if backtrack(i + 1):
                return True
            del vmap[v]
            used.remove(w)
        return False

    if not backtrack(0):
        return None

    amap: Dict[str, str] = {}
    buckets: Dict[Tuple[str, str], List[str]] = {}
    for e in g2.sorted_edges():
        buckets.setdefault(g2.edges[e], []).append(e)
    for e in g1.sorted_edges():
        s, t = g1.edges[e]
        amap[e] = buckets[(vmap[s], vmap[t])].pop(0)
    for o1, o2 in zip(g1.sorted_circles(), g2.sorted_circles()):
        amap[o1] = o2
    return dict(sorted(vmap.items())), amap
