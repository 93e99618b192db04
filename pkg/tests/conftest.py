import sys
from pathlib import Path

from hypothesis import strategies as st

from domatic.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

CUBIC8_EDGES = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def graphs_without_isolated(draw, min_n=2, max_n=9):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    edges = g.edges()
    for v in range(g.vertex_count):
        if not g.adjacency[v]:
            u = (v + 1) % g.vertex_count
            edges.append((min(u, v), max(u, v)))
    return Graph.from_edges(g.vertex_count, sorted(set(edges)))
