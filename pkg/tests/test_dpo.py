import pytest

from dpoembed import (
    BoundaryEmbedding,
    BoundaryGraph,
    PartitioningSpan,
    RewriteRule,
    classify,
    compose,
    enumerate_re_pairings,
    graph,
    iso_check,
    morphism,
    pushout,
    pushout_complement,
    rewrite,
    validate_rule,
)
from dpoembed.dpo import (
    NotABoundaryEmbedding,
    SizeLimitExceeded,
    SolutionIndexOutOfRange,
    SolutionMismatch,
)


def test_pushout_of_edgeless_boundary():
    # both boundary images vanish; the rest is a disjoint union
    b = BoundaryGraph(graph(["bnd", "dbd"]), "bnd", "dbd")
    left = graph(["vb", "u"])
    l = morphism(b.graph, left, {"bnd": "vb"}, {})
    ctx = graph(["wb", "w"])
    c = morphism(b.graph, ctx, {"dbd": "wb"}, {})
    po = pushout(PartitioningSpan(b, left, ctx, l, c))
    assert po.graph.vertices == frozenset(["L.u", "C.w"])
    assert not po.graph.edges and not po.graph.circles


def test_pushout_two_cycle_yields_circle(two_edge_boundary, loop_left):
    left, l = loop_left
    ctx = graph(["w"], {"c": ("w", "w")})
    c = morphism(two_edge_boundary.graph, ctx, {"dbd": "w"},
                 {"e1": "c", "e2": "c"})
    po = pushout(PartitioningSpan(two_edge_boundary, left, ctx, l, c))
    assert not po.graph.vertices and not po.graph.edges
    assert len(po.graph.circles) == 1
    (o,) = po.graph.circles
    assert po.arc_classes[o] == ("e1", "e2")


def test_pushout_two_region_glues(two_region_span):
    po = pushout(two_region_span)
    assert len(po.graph.vertices) == 2
    assert len(po.graph.edges) == 2
    assert not po.graph.circles
    assert iso_check(po.graph,
                     graph(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")}))


def test_pushout_legs_commute_and_embed(two_region_span):
    span = two_region_span
    po = pushout(span)
    assert classify(po.m).is_embedding
    assert classify(po.g).is_embedding
    assert (compose(po.m, span.l).key() == compose(po.g, span.c).key())


def test_complement_of_circle_host(circle_host_embedding):
    comp = pushout_complement(circle_host_embedding)
    # a single dual-boundary vertex carrying one self-loop
    assert comp.context.vertices == frozenset([comp.dual_boundary])
    assert len(comp.context.edges) == 1
    (e,) = comp.context.edges
    assert comp.context.edges[e] == (comp.dual_boundary, comp.dual_boundary)
    assert not comp.context.circles
    assert comp.c.amap == {"e1": e, "e2": e}


def test_complement_round_trip(circle_host_embedding):
    be = circle_host_embedding
    comp = pushout_complement(be)
    span = comp.span(be.l, be.b, be.left)
    assert iso_check(pushout(span).graph, be.host) is not None


def test_complement_rejects_foreign_solution(circle_host_embedding,
                                             two_edge_boundary, loop_left):
    from dpoembed.boundary import PairingGraph
    be = circle_host_embedding
    wrong = PairingGraph(("e1", "e2"), {"e1": "+", "e2": "-"},
                         frozenset(), frozenset())
    with pytest.raises(SolutionMismatch):
        pushout_complement(be, wrong)


def test_rewrite_identity_rule(loop_rule, mixed_host):
    from dpoembed import MatchRequest, find_matches
    matches = find_matches(MatchRequest(loop_rule, mixed_host))
    assert len(matches) == len(mixed_host.arcs())
    for mt in matches:
        result, trace = rewrite(loop_rule, mixed_host, mt.m)
        assert iso_check(result, mixed_host) is not None
        assert trace.solution.key() == trace.complement.solution.key()


def test_rewrite_rejects_non_match(loop_rule, mixed_host):
    bad = morphism(loop_rule.left, mixed_host, {"v": "x"}, {"a": "h"})
    with pytest.raises(NotABoundaryEmbedding):
        rewrite(loop_rule, mixed_host, bad)


def test_rewrite_solution_index_out_of_range(loop_rule, mixed_host):
    from dpoembed import MatchRequest, find_matches
    mt = find_matches(MatchRequest(loop_rule, mixed_host))[0]
    with pytest.raises(SolutionIndexOutOfRange):
        rewrite(loop_rule, mixed_host, mt.m, solution_index=99)


def test_validate_rule(loop_rule):
    assert validate_rule(loop_rule) == []


def test_iso_check_positive_and_negative():
    g1 = graph(["a", "b", "c"],
               {"e1": ("a", "b"), "e2": ("b", "c"), "e3": ("c", "a")})
    g2 = graph(["x", "y", "z"],
               {"d1": ("y", "z"), "d2": ("z", "x"), "d3": ("x", "y")})
    iso = iso_check(g1, g2)
    assert iso is not None
    vmap, amap = iso
    for e in g1.edges:
        s, t = g1.edges[e]
        assert g2.edges[amap[e]] == (vmap[s], vmap[t])
    path = graph(["x", "y", "z"], {"d1": ("x", "y"), "d2": ("y", "z")})
    assert iso_check(g1, path) is None


def test_iso_check_distinguishes_directions():
    cyc = graph(["a", "b"], {"e1": ("a", "b"), "e2": ("b", "a")})
    par = graph(["a", "b"], {"e1": ("a", "b"), "e2": ("a", "b")})
    assert iso_check(cyc, par) is None


def test_iso_check_size_limit():
    big = graph([f"v{i}" for i in range(100)])
    with pytest.raises(SizeLimitExceeded):
        iso_check(big, big)
