"""Hypothesis strategies for small simple graphs and orientations."""

from itertools import combinations

from hypothesis import strategies as st

from core.graph import Graph, Orientation


@st.composite
def graphs(draw, min_vertices=0, max_vertices=7):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [pair for pair, k in zip(pairs, keep) if k])


@st.composite
def orientations(draw, min_vertices=0, max_vertices=6, max_edges=12):
    graph = draw(graphs(min_vertices, max_vertices).filter(lambda g: g.edge_count <= max_edges))
    mask = draw(st.integers(0, (1 << graph.edge_count) - 1))
    return Orientation.from_mask(graph, mask)
