"""Match search: finding embeddings of a rule's left-hand side into a
host graph that form boundary embeddings.

Deterministic id-order backtracking over the interior vertices of L
(anchored at the lowest-id vertex of maximal degree), followed by
enumeration of the per-vertex flag bijections and of the images of
flagless arcs (self-loops at the boundary image and circles).  Every
candidate is validated through `check_match`, so the search is sound by
construction; completeness against brute force is checked in lawcheck.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .graph import SRC, TGT, Flag, Graph, degree, flags_at, is_connected
from .morphism import GraphMorphism, classify, morphism
from .boundary import BoundaryEmbedding, validate_boundary_embedding
from .dpo import RewriteRule, validate_rule
from .rotation import RotationSystem, check_rot_morphism


class MatcherError(Exception):
    pass


class LNotConnected(MatcherError):
    pass


class MatchLimitExceeded(MatcherError):
    pass


@dataclass(frozen=True)
class MatchOptions:
    max_matches: int = 10000
    require_rotation_preservation: bool = False


@dataclass(frozen=True)
class MatchRequest:
    rule: RewriteRule
    host: Graph
    options: MatchOptions = MatchOptions()
    host_rotation: Optional[RotationSystem] = None
    left_rotation: Optional[RotationSystem] = None


@dataclass(frozen=True)
class Match:
    m: GraphMorphism
    boundary_embedding: BoundaryEmbedding


@dataclass(frozen=True)
class MatchCheck:
    match: Optional[Match]
    failures: Tuple[Tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return self.match is not None


def check_match(rule: RewriteRule, host: Graph,
                m: GraphMorphism) -> MatchCheck:
    """Validate a candidate match condition by condition."""
    failures = list(validate_rule(rule))
    boundary_image = rule.l.v(rule.b.boundary)
    cls = classify(m)
    if not cls.is_embedding:
        failures.extend(cls.violations or [("MatchNotEmbedding", cls.kind)])
    if boundary_image is not None:
        if m.v(boundary_image) is not None:
            failures.append(("MatchDefinedOnBoundaryImage", boundary_image))
        for v in sorted(rule.left.vertices):
            if v != boundary_image and m.v(v) is None:
                failures.append(("MatchUndefinedOnInterior", v))
    be = BoundaryEmbedding(rule.b, rule.left, host, rule.l, m)
    failures.extend(e for e in validate_boundary_embedding(be)
                    if e not in failures)
    if failures:
        return MatchCheck(None, tuple(failures))
    return MatchCheck(Match(m, be))


def _flag_bijections(l_flags, h_flags):
    """All end-preserving bijections between two flag sets."""
    by_end_l = {SRC: [], TGT: []}
    by_end_h = {SRC: [], TGT: []}
    for fl in sorted(l_flags):
        by_end_l[fl.end].append(fl)
    for fl in sorted(h_flags):
        by_end_h[fl.end].append(fl)
    if any(len(by_end_l[e]) != len(by_end_h[e]) for e in (SRC, TGT)):
        return
    for src_perm in itertools.permutations(by_end_h[SRC]):
        for tgt_perm in itertools.permutations(by_end_h[TGT]):
            yield dict(zip(by_end_l[SRC], src_perm)) | dict(
                zip(by_end_l[TGT], tgt_perm))


def find_matches(req: MatchRequest) -> List[Match]:
    """All matches of the rule's left-hand side into the host."""
    rule, host, opts = req.rule, req.host, req.options
    left = rule.left
    if not is_connected(left):
        raise LNotConnected("rule left-hand side must be connected")
    boundary_image = rule.l.vmap[rule.b.boundary]
    interior = sorted(v for v in left.vertices if v != boundary_image)
    if not interior and not left.edges and not left.circles:
        return []  # degenerate rule: nothing to anchor a match

    if interior:
        anchor = min(interior, key=lambda v: (-degree(left, v), v))
        rest = sorted(v for v in interior if v != anchor)
        order = [anchor] + rest
    else:
        order = []

    host_vertices = host.sorted_vertices()
    free_arcs = sorted(
        [e for e in left.edges
         if left.edges[e] == (boundary_image, boundary_image)]
        + list(left.circles))
    results: List[Match] = []
    seen = set()

    def record(vmap, amap):
        m = morphism(left, host, vmap, amap)
        checked = check_match(rule, host, m)
        if checked.ok and m.key() not in seen:
            seen.add(m.key())
            results.append(checked.match)
            if len(results) > opts.max_matches:
                raise MatchLimitExceeded(opts.max_matches)

    def assign_free_arcs(vmap, amap):
        host_arcs = host.arcs()
        host_circles = host.sorted_circles()
        loops = [a for a in free_arcs if left.is_edge(a)]
        circles = [a for a in free_arcs if left.is_circle(a)]
        loop_choices = itertools.product(host_arcs, repeat=len(loops))
        for loop_imgs in loop_choices:
            for circ_imgs in itertools.permutations(host_circles, len(circles)):
                full = dict(amap)
                full.update(zip(loops, loop_imgs))
                full.update(zip(circles, circ_imgs))
                record(vmap, full)

    def assign_arcs(vmap):
        # Per matched vertex, enumerate end-preserving flag bijections;
        # each choice forces the arc map on the incident edges, and the
        # forcings must agree where an edge has two matched endpoints.
        per_vertex = []
        for v in order:
            options = list(_flag_bijections(
                flags_at(left, v), flags_at(host, vmap[v])))
            if not options:
                return
            per_vertex.append(options)
        for combo in itertools.product(*per_vertex):
            amap: Dict[str, str] = {}
            ok = True
            for bij in combo:
                for fl, hfl in bij.items():
                    forced = amap.get(fl.edge)
                    if forced is not None and forced != hfl.edge:
                        ok = False
                        break
                    amap[fl.edge] = hfl.edge
                if not ok:
                    break
            if ok:
                assign_free_arcs(vmap, amap)

    def backtrack(i, vmap, used):
        if i == len(order):
            assign_arcs(dict(vmap))
            return
        v = order[i]
        d = degree(left, v)
        for w in host_vertices:
            if w in used or degree(host, w) != d:
                continue
            vmap[v] = w
            used.add(w)
            backtrack(i + 1, vmap, used)
            del vmap[v]
            used.remove(w)

    backtrack(0, {}, set())

    if opts.require_rotation_preservation:
        if req.left_rotation is None or req.host_rotation is None:
            raise MatcherError(
                "rotation preservation requested without rotation data")
        results = [
            mt for mt in results
            if check_rot_morphism(mt.m, req.left_rotation, req.host_rotation)
        ]
    results.sort(key=lambda mt: mt.m.key())
    return results
