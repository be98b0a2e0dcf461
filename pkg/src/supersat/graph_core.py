"""Small dense simple graphs stored as per-vertex adjacency bitsets.

Vertex ``v`` of a :class:`Graph` has its neighbourhood stored as the Python
integer ``adj[v]`` whose bit ``u`` is set iff ``u ~ v``.  Graphs are immutable
and every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a construction would exceed :data:`MAX_VERTICES`."""


class GraphFormatError(ValueError):
    """Malformed edge-list text.  ``lineno`` is 1-based, or None."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        n, adj = self.n, self.adj
        if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
            raise CapacityError(f"vertex count must be in 1..{MAX_VERTICES}, got {n!r}")
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Skip validation; callers guarantee a well-formed symmetric loop-free adj.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
            raise CapacityError(f"vertex count must be in 1..{MAX_VERTICES}, got {n!r}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges ``(u, v)`` with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in _bits(row):
                new |= 1 << perm[u]
            adj[perm[v]] = new
        return Graph._trusted(self.n, adj)

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise IndexError(f"vertex {v!r} out of range for n={self.n}")


class VertexDelta(NamedTuple):
    """Exact change in the star count under cloning / deleting one vertex."""

    b_plus: int
    b_minus: int


# --- counting -------------------------------------------------------------


def _is_clique(adj: tuple[int, ...], cand: int) -> bool:
    return all((adj[v] | 1 << v) & cand == cand for v in _bits(cand))


def _count_in(adj: tuple[int, ...], cand: int, t: int) -> int:
    """Number of t-cliques inside the vertex set ``cand``."""
    if t == 0:
        return 1
    size = cand.bit_count()
    if t == 1 or size < t:
        return size if t == 1 else 0
    if t == 2:
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            total += (cand & adj[low.bit_length() - 1]).bit_count()
        return total
    if _is_clique(adj, cand):
        return comb(size, t)
    total = 0
    while cand.bit_count() >= t:
        low = cand & -cand
        cand ^= low
        total += _count_in(adj, cand & adj[low.bit_length() - 1], t - 1)
    return total


def _has_clique(adj: tuple[int, ...], cand: int, t: int) -> bool:
    if t <= 0:
        return True
    if cand.bit_count() < t:
        return False
    if t == 1:
        return True
    while cand.bit_count() >= t:
        low = cand & -cand
        cand ^= low
        if _has_clique(adj, cand & adj[low.bit_length() - 1], t - 1):
            return True
    return False


def count_cliques(g: Graph, t: int) -> int:
    """k_t(g): the number of t-vertex subsets that induce a complete graph."""
    if not 1 <= t <= MAX_VERTICES:
        raise ValueError(f"clique order must be in 1..{MAX_VERTICES}, got {t}")
    return _count_in(g.adj, (1 << g.n) - 1, t)


def count_cliques_at(g: Graph, v: int, t: int) -> int:
    """Number of t-cliques containing ``v``, i.e. k_{t-1} of the neighbourhood."""
    g._check_vertex(v)
    if not 1 <= t <= MAX_VERTICES:
        raise ValueError(f"clique order must be in 1..{MAX_VERTICES}, got {t}")
    return _count_in(g.adj, g.adj[v], t - 1)


def count_stars(g: Graph, r: int) -> int:
    """s_r(g) = sum over vertices of C(d(v), r)."""
    if r < 1:
        raise ValueError(f"leaf count must be >= 1, got {r}")
    return sum(comb(d, r) for d in g.degrees())


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees(), reverse=True)


def is_kr1_free(g: Graph, r: int) -> bool:
    """True iff g has no clique on r+1 vertices."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return not _has_clique(g.adj, (1 << g.n) - 1, r + 1)


def max_degree(g: Graph) -> int:
    return max(g.degrees())


def is_complete_multipartite(g: Graph) -> bool:
    """True iff non-adjacency is an equivalence relation on V(g)."""
    for u, v in combinations(range(g.n), 2):
        if not g.adj[u] >> v & 1 and g.adj[u] != g.adj[v]:
            return False
    return True


def multipartite_parts(g: Graph) -> Optional[list[int]]:
    """Part sizes (nonincreasing) if g is complete multipartite, else None."""
    if not is_complete_multipartite(g):
        return None
    groups: dict[int, int] = {}
    for row in g.adj:
        groups[row] = groups.get(row, 0) + 1
    return sorted(groups.values(), reverse=True)


# --- local modifications --------------------------------------------------


def delete_vertex(g: Graph, x: int) -> Graph:
    """Remove ``x``; vertices above ``x`` shift down by one."""
    g._check_vertex(x)
    if g.n == 1:
        raise ValueError("cannot delete the only vertex")
    low = (1 << x) - 1
    adj = []
    for v, row in enumerate(g.adj):
        if v == x:
            continue
        adj.append((row & low) | (row >> (x + 1) << x))
    return Graph._trusted(g.n - 1, adj)


def clone_vertex(g: Graph, x: int) -> Graph:
    """Add a new vertex ``n`` with the same neighbourhood as ``x`` (not adjacent to x)."""
    g._check_vertex(x)
    if g.n >= MAX_VERTICES:
        raise CapacityError(f"cannot clone: graph already has {g.n} vertices")
    new = g.n
    nbrs = g.adj[x]
    adj = [row | (1 << new) if nbrs >> v & 1 else row for v, row in enumerate(g.adj)]
    adj.append(nbrs)
    return Graph._trusted(g.n + 1, adj)


def vertex_delta(g: Graph, x: int, t: int) -> VertexDelta:
    g._check_vertex(x)
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    deg = g.degrees()
    own = comb(deg[x], t)
    nbrs = list(_bits(g.adj[x]))
    b_plus = own + sum(comb(deg[v], t - 1) for v in nbrs)
    b_minus = own + sum(comb(deg[v] - 1, t - 1) for v in nbrs)
    return VertexDelta(b_plus, b_minus)


# --- blowup search --------------------------------------------------------


def find_blowup(g: Graph, s: int, b: int) -> Optional[list[list[int]]]:
    """Find s disjoint b-sets that are pairwise completely joined.

    Exhaustive, so only meant for s*b up to ~16.  Classes are returned in
    increasing order of their smallest vertex.  Returns None if g has no
    (not necessarily induced) copy of K_s(b).
    """
    if s < 1 or b < 1:
        raise ValueError("s and b must be >= 1")
    if s * b > g.n:
        return None
    adj = g.adj

    def search(classes: list[tuple[int, ...]], cand: int, floor: int):
        # classes are ordered by their minimum vertex, so every later class
        # lives strictly above ``floor``
        if len(classes) == s:
            return [list(c) for c in classes]
        pool = [v for v in _bits(cand) if v > floor]
        need = (s - len(classes)) * b
        for i, first in enumerate(pool):
            if len(pool) - i < need:
                break
            for others in combinations(pool[i + 1:], b - 1):
                chosen = (first,) + others
                common = cand
                for u in chosen:
                    common &= adj[u]
                found = search(classes + [chosen], common, first)
                if found is not None:
                    return found
        return None

    return search([], (1 << g.n) - 1, -1)


# --- edge-list text format ------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: ``n`` then ``u v`` lines with u < v."""
    n: Optional[int] = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1 or not fields[0].isdigit():
                raise GraphFormatError(f"expected vertex count, got {line!r}", lineno)
            n = int(fields[0])
            if not 1 <= n <= MAX_VERTICES:
                raise GraphFormatError(f"vertex count {n} outside 1..{MAX_VERTICES}", lineno)
            continue
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if not u < v:
            raise GraphFormatError(f"edge must be written with u < v, got {line!r}", lineno)
        if v >= n:
            raise GraphFormatError(f"vertex {v} out of range for n={n}", lineno)
        if (u, v) in edges:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        edges.add((u, v))
    if n is None:
        raise GraphFormatError("missing vertex count")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g))
