"""The Document text format: versioned JSON for every domain object.

One self-describing format with a kind tag; printing is byte-stable
(sorted keys, fixed indentation) and parsing is strict by default:
unknown fields are rejected with a position, and every loaded object is
re-validated with the module validators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from .graph import SRC, TGT, Flag, Graph, graph, validate_graph
from .morphism import GraphMorphism, morphism
from .boundary import (
    BoundaryEmbedding,
    BoundaryGraph,
    PairingGraph,
    PartitioningSpan,
    validate_boundary_embedding,
    validate_boundary_graph,
    validate_span,
)
from .dpo import RewriteRule, validate_rule
from .rotation import RotationSystem, SurfaceReport, rotation_system, validate_rotation

FORMAT_VERSION = "1"

KINDS = (
    "graph",
    "rotation_graph",
    "morphism",
    "rule",
    "span",
    "boundary_embedding",
    "match",
    "trace",
    "classification",
    "surface_report",
    "law_report",
)


class DocumentError(Exception):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UnknownField(DocumentError):
    pass


class VersionMismatch(DocumentError):
    pass


class ValidationFailed(DocumentError):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    body: Mapping[str, Any]
    format_version: str = FORMAT_VERSION


def _check_fields(obj: Mapping, allowed, required, where: str,
                  lenient: bool) -> None:
    if not isinstance(obj, dict):
        raise ValidationFailed(f"{where}: expected an object")
    for key in obj:
        if key not in allowed and not lenient:
            raise UnknownField(f"{where}: unknown field {key!r}")
    for key in required:
        if key not in obj:
            raise ValidationFailed(f"{where}: missing field {key!r}")


# ---------------------------------------------------------------------------
# graphs and rotations

def _flag_to_token(fl: Flag) -> str:
    return f"{fl.edge}.{fl.end}"


def _flag_from_token(token: str, where: str) -> Flag:
    edge, dot, end = token.rpartition(".")
    if not dot or end not in (SRC, TGT):
        raise ValidationFailed(f"{where}: bad flag token {token!r}")
    return Flag(edge, end)


def graph_to_body(g: Graph,
                  rotations: Optional[RotationSystem] = None) -> Dict[str, Any]:
    body: Dict[str, Any] = {
        "vertices": g.sorted_vertices(),
        "edges": {e: {"source": g.source(e), "target": g.target(e)}
                  for e in g.sorted_edges()},
        "circles": g.sorted_circles(),
    }
    if rotations is not None:
        body["rotations"] = {
            v: [_flag_to_token(fl) for fl in rotations.rotation(v)]
            for v in g.sorted_vertices()
        }
    return body


def graph_from_body(body: Mapping, where: str = "graph",
                    lenient: bool = False):
    """Returns (Graph, Optional[RotationSystem])."""
    _check_fields(body, {"vertices", "edges", "circles", "rotations"},
                  {"vertices", "edges"}, where, lenient)
    edges = {}
    for e, spec in dict(body.get("edges", {})).items():
        _check_fields(spec, {"source", "target"}, {"source", "target"},
                      f"{where}.edges.{e}", lenient)
        edges[e] = (spec["source"], spec["target"])
    g = graph(body.get("vertices", []), edges, body.get("circles", []))
    report = validate_graph(g)
    if not report.ok:
        raise ValidationFailed(f"{where}: {report.errors}")
    rs = None
    if "rotations" in body:
        inc = {
            v: [_flag_from_token(t, f"{where}.rotations.{v}") for t in fls]
            for v, fls in body["rotations"].items()
        }
        rs = rotation_system(g, inc)
        rreport = validate_rotation(rs)
        if not rreport.ok:
            raise ValidationFailed(f"{where}: {rreport.errors}")
    return g, rs


def map_to_body(f: GraphMorphism) -> Dict[str, Any]:
    return {"vertices": dict(sorted(f.vmap.items())),
            "arcs": dict(sorted(f.amap.items()))}


def map_from_body(body: Mapping, dom: Graph, cod: Graph, where: str,
                  lenient: bool = False) -> GraphMorphism:
    _check_fields(body, {"vertices", "arcs"}, {"vertices", "arcs"},
                  where, lenient)
    return morphism(dom, cod, dict(body["vertices"]), dict(body["arcs"]))


def boundary_to_body(b: BoundaryGraph,
                     rotations: Optional[RotationSystem] = None):
    body = graph_to_body(b.graph, rotations)
    body["boundary_vertex"] = b.boundary
    body["dual_boundary_vertex"] = b.dual_boundary
    return body


def boundary_from_body(body: Mapping, where: str = "boundary",
                       lenient: bool = False):
    extra = {"boundary_vertex", "dual_boundary_vertex"}
    _check_fields(body, {"vertices", "edges", "circles", "rotations"} | extra,
                  {"vertices", "edges"} | extra, where, lenient)
    inner = {k: v for k, v in body.items() if k not in extra}
    g, rs = graph_from_body(inner, where, lenient)
    b = BoundaryGraph(g, body["boundary_vertex"], body["dual_boundary_vertex"])
    errors = validate_boundary_graph(b)
    if errors:
        raise ValidationFailed(f"{where}: {errors}")
    return b, rs


def solution_to_body(p: PairingGraph) -> Dict[str, Any]:
    return {
        "nodes": {n: p.polarity[n] for n in p.nodes},
        "blue": [list(pair) for pair in sorted(p.blue)],
        "red": [list(pair) for pair in sorted(p.red)],
    }


def solution_from_body(body: Mapping, where: str = "solution",
                       lenient: bool = False) -> PairingGraph:
    _check_fields(body, {"nodes", "blue", "red"}, {"nodes", "blue", "red"},
                  where, lenient)
    nodes = tuple(sorted(body["nodes"]))
    return PairingGraph(
        nodes, dict(body["nodes"]),
        frozenset(tuple(p) for p in body["blue"]),
        frozenset(tuple(p) for p in body["red"]),
    )


# ---------------------------------------------------------------------------
# documents

def graph_doc(g: Graph, rotations: Optional[RotationSystem] = None) -> Document:
    kind = "rotation_graph" if rotations is not None else "graph"
    return Document(kind, graph_to_body(g, rotations))


def morphism_doc(f: GraphMorphism,
                 dom_rot: Optional[RotationSystem] = None,
                 cod_rot: Optional[RotationSystem] = None) -> Document:
    return Document("morphism", {
        "dom": graph_to_body(f.dom, dom_rot),
        "cod": graph_to_body(f.cod, cod_rot),
        "map": map_to_body(f),
    })


def rule_doc(rule: RewriteRule, rots: Optional[Mapping[str, RotationSystem]] = None
             ) -> Document:
    rots = rots or {}
    return Document("rule", {
        "boundary": boundary_to_body(rule.b, rots.get("boundary")),
        "left": graph_to_body(rule.left, rots.get("left")),
        "right": graph_to_body(rule.right, rots.get("right")),
        "left_map": map_to_body(rule.l),
        "right_map": map_to_body(rule.r),
    })


def span_doc(span: PartitioningSpan,
             rots: Optional[Mapping[str, RotationSystem]] = None) -> Document:
    rots = rots or {}
    return Document("span", {
        "boundary": boundary_to_body(span.b, rots.get("boundary")),
        "left": graph_to_body(span.left, rots.get("left")),
        "context": graph_to_body(span.context, rots.get("context")),
        "left_map": map_to_body(span.l),
        "context_map": map_to_body(span.c),
    })


def boundary_embedding_doc(be: BoundaryEmbedding,
                           rots: Optional[Mapping[str, RotationSystem]] = None
                           ) -> Document:
    rots = rots or {}
    return Document("boundary_embedding", {
        "boundary": boundary_to_body(be.b, rots.get("boundary")),
        "left": graph_to_body(be.left, rots.get("left")),
        "host": graph_to_body(be.host, rots.get("host")),
        "left_map": map_to_body(be.l),
        "match_map": map_to_body(be.m),
    })


def surface_report_doc(report: SurfaceReport) -> Document:
    return Document("surface_report", {
        "components": [
            {
                "vertices": list(c.vertices),
                "arcs": list(c.arcs),
                "vertex_count": c.vertex_count,
                "edge_count": c.edge_count,
                "circle_count": c.circle_count,
                "face_count": c.face_count,
                "euler_characteristic": c.euler_characteristic,
                "genus": c.genus,
            }
            for c in report.components
        ],
        "max_genus": report.max_genus,
        "is_planar": report.is_planar,
        "embedding_underdetermined": report.embedding_underdetermined,
    })


def law_report_doc(law: str, instances: int,
                   counterexample: Optional[str]) -> Document:
    return Document("law_report", {
        "law": law,
        "instances": instances,
        "counterexample": counterexample,
    })


_BODY_FIELDS = {
    "graph": ({"vertices", "edges", "circles"}, {"vertices", "edges"}),
    "rotation_graph": ({"vertices", "edges", "circles", "rotations"},
                       {"vertices", "edges", "rotations"}),
    "morphism": ({"dom", "cod", "map"}, {"dom", "cod", "map"}),
    "rule": ({"boundary", "left", "right", "left_map", "right_map"},
             {"boundary", "left", "right", "left_map", "right_map"}),
    "span": ({"boundary", "left", "context", "left_map", "context_map"},
             {"boundary", "left", "context", "left_map", "context_map"}),
    "boundary_embedding": (
        {"boundary", "left", "host", "left_map", "match_map"},
        {"boundary", "left", "host", "left_map", "match_map"}),
    "match": ({"rule", "host", "matches"}, {"rule", "host"}),
    "trace": (None, set()),   # trace bodies are free-form but versioned
    "classification": ({"kind", "violations"}, {"kind", "violations"}),
    "surface_report": (
        {"components", "max_genus", "is_planar", "embedding_underdetermined"},
        {"components", "max_genus", "is_planar", "embedding_underdetermined"}),
    "law_report": ({"law", "instances", "counterexample"},
                   {"law", "instances", "counterexample"}),
}


def print_document(doc: Document) -> str:
    payload = {
        "format_version": doc.format_version,
        "kind": doc.kind,
        "body": doc.body,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_document(text: str, lenient: bool = False) -> Document:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    _check_fields(payload, {"format_version", "kind", "body"},
                  {"format_version", "kind", "body"}, "document", lenient)
    if payload["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(payload["format_version"])
    kind = payload["kind"]
    if kind not in KINDS:
        raise ValidationFailed(f"unknown document kind {kind!r}")
    body = payload["body"]
    allowed, required = _BODY_FIELDS[kind]
    if allowed is not None:
        _check_fields(body, allowed, required, kind, lenient)
    doc = Document(kind, body)
    load_document(doc, lenient=lenient)  # validation pass
    return doc


def load_document(doc: Document, lenient: bool = False):
    """Reconstruct the domain object a document describes.

    Returns per kind: graph -> (Graph, None); rotation_graph ->
    (Graph, RotationSystem); morphism -> GraphMorphism; rule ->
    (RewriteRule, rots); span -> (PartitioningSpan, rots);
    boundary_embedding -> (BoundaryEmbedding, rots); others -> body.
    """
    body = doc.body
    if doc.kind in ("graph", "rotation_graph"):
        g, rs = graph_from_body(body, doc.kind, lenient)
        if doc.kind == "rotation_graph" and rs is None:
            raise ValidationFailed("rotation_graph without rotations")
        return g, rs
    if doc.kind == "morphism":
        dom, dom_rot = graph_from_body(body["dom"], "dom", lenient)
        cod, cod_rot = graph_from_body(body["cod"], "cod", lenient)
        f = map_from_body(body["map"], dom, cod, "map", lenient)
        return f, dom_rot, cod_rot
    if doc.kind == "rule":
        b, b_rot = boundary_from_body(body["boundary"], "boundary", lenient)
        left, l_rot = graph_from_body(body["left"], "left", lenient)
        right, r_rot = graph_from_body(body["right"], "right", lenient)
        rule = RewriteRule(
            b, left, right,
            map_from_body(body["left_map"], b.graph, left, "left_map", lenient),
            map_from_body(body["right_map"], b.graph, right, "right_map", lenient),
        )
        errors = validate_rule(rule)
        if errors:
            raise ValidationFailed(f"rule: {errors}")
        return rule, {"boundary": b_rot, "left": l_rot, "right": r_rot}
    if doc.kind == "span":
        b, b_rot = boundary_from_body(body["boundary"], "boundary", lenient)
        left, l_rot = graph_from_body(body["left"], "left", lenient)
        ctx, c_rot = graph_from_body(body["context"], "context", lenient)
        span = PartitioningSpan(
            b, left, ctx,
            map_from_body(body["left_map"], b.graph, left, "left_map", lenient),
            map_from_body(body["context_map"], b.graph, ctx, "context_map",
                          lenient),
        )
        errors = validate_span(span)
        if errors:
            raise ValidationFailed(f"span: {errors}")
        return span, {"boundary": b_rot, "left": l_rot, "context": c_rot}
    if doc.kind == "boundary_embedding":
        b, b_rot = boundary_from_body(body["boundary"], "boundary", lenient)
        left, l_rot = graph_from_body(body["left"], "left", lenient)
        host, h_rot = graph_from_body(body["host"], "host", lenient)
        be = BoundaryEmbedding(
            b, left, host,
            map_from_body(body["left_map"], b.graph, left, "left_map", lenient),
            map_from_body(body["match_map"], left, host, "match_map", lenient),
        )
        errors = validate_boundary_embedding(be)
        if errors:
            raise ValidationFailed(f"boundary_embedding: {errors}")
        return be, {"boundary": b_rot, "left": l_rot, "host": h_rot}
    if doc.kind == "match":
        rule, rots = load_document(Document("rule", body["rule"]), lenient)
        host, h_rot = graph_from_body(body["host"], "host", lenient)
        matches = [
            map_from_body(entry, rule.left, host, f"matches[{i}]", lenient)
            for i, entry in enumerate(body.get("matches", []))
        ]
        rots["host"] = h_rot
        return rule, host, matches, rots
    return body
