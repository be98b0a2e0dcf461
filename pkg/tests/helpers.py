"""Small named graphs, independent brute-force counters and hypothesis strategies."""

import itertools
from math import comb

from hypothesis import strategies as st

from supersat.graph_core import Graph


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(k):
    """K_{1,k} with centre 0."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def naive_cliques(g, t):
    """Count t-subsets that are complete, straight from the definition."""
    return sum(
        all(g.has_edge(u, v) for u, v in itertools.combinations(sub, 2))
        for sub in itertools.combinations(range(g.n), t)
    )


def naive_stars(g, r):
    """Count (centre, r-set of neighbours) pairs by enumerating the sets."""
    total = 0
    for v in range(g.n):
        nbrs = [u for u in range(g.n) if g.has_edge(u, v)]
        total += sum(1 for _ in itertools.combinations(nbrs, r))
    return total


def to_networkx(g):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_vertex(draw, min_n=1, max_n=12):
    g = draw(graphs(min_n, max_n))
    return g, draw(st.integers(0, g.n - 1))


def binom(n, k):
    return comb(n, k) if n >= 0 else 0
