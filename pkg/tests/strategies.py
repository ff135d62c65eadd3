from hypothesis import strategies as st

from chroma.complex import SimplicialComplex
from chroma.graph import Graph


def adj(g):
    return {v: set(g.neighbors(v)) for v in range(g.vertex_count)}


@st.composite
def graphs(draw, max_n=7, loops=True):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@st.composite
def complexes(draw, max_vertices=8, max_facets=6, max_size=4):
    n = draw(st.integers(1, max_vertices))
    facets = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=max_size),
                           min_size=1, max_size=max_facets))
    return SimplicialComplex.from_facets(facets, vertex_count=n)
