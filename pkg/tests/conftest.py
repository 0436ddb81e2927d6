import pathlib

import pytest

from dpoembed import (
    BoundaryEmbedding,
    BoundaryGraph,
    PartitioningSpan,
    RewriteRule,
    graph,
    morphism,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def two_edge_boundary():
    """B with one positive and one negative boundary edge."""
    return BoundaryGraph(
        graph(["bnd", "dbd"], {"e1": ("bnd", "dbd"), "e2": ("dbd", "bnd")}),
        "bnd", "dbd")


@pytest.fixture
def loop_left(two_edge_boundary):
    """L: a single vertex carrying one self-loop, both boundary edges
    identified onto it."""
    left = graph(["v"], {"a": ("v", "v")})
    l = morphism(two_edge_boundary.graph, left, {"bnd": "v"},
                 {"e1": "a", "e2": "a"})
    return left, l


@pytest.fixture
def circle_host():
    return graph([], {}, ["o"])


@pytest.fixture
def circle_host_embedding(two_edge_boundary, loop_left, circle_host):
    left, l = loop_left
    m = morphism(left, circle_host, {}, {"a": "o"})
    return BoundaryEmbedding(two_edge_boundary, left, circle_host, l, m)


@pytest.fixture
def loop_rule(two_edge_boundary, loop_left):
    """The identity rule: L = R = one self-loop over the two-edge
    boundary; rewriting replaces an arc by an equal arc."""
    left, l = loop_left
    return RewriteRule(two_edge_boundary, left, left, l, l)


@pytest.fixture
def mixed_host():
    return graph(["x", "y"],
                 {"f": ("x", "y"), "g": ("y", "x"), "h": ("x", "x")},
                 ["oo"])


@pytest.fixture
def two_region_span(two_edge_boundary):
    b = two_edge_boundary
    left = graph(["vb", "u"], {"le1": ("vb", "u"), "le2": ("u", "vb")})
    l = morphism(b.graph, left, {"bnd": "vb"}, {"e1": "le1", "e2": "le2"})
    ctx = graph(["wb", "w"], {"ce1": ("w", "wb"), "ce2": ("wb", "w")})
    c = morphism(b.graph, ctx, {"dbd": "wb"}, {"e1": "ce1", "e2": "ce2"})
    return PartitioningSpan(b, left, ctx, l, c)
