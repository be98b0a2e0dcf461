"""Brute-force ground truth for small instances.

Everything here is deliberately naive and shares no code with the bounds or
optimizer modules beyond the basic counting primitives of ``graph_core``.

Graphs on up to 9 vertices are enumerated up to isomorphism by vertex
augmentation: every graph on n vertices arises from one on n-1 vertices by
adding a vertex, and both forbidden families we need (maximum degree <= r,
no K_{r+1}) are closed under vertex deletion, so augmentation can be
restricted to forbidden-free graphs.  Duplicates are removed with an exact
canonical form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Union

import numpy as np

from .constructions import PartitionProfile, multipartite_star_count
from .graph_core import (
    Graph,
    _has_clique,
    count_cliques,
    count_stars,
    is_complete_multipartite,
)

MAX_BRUTE_N = 9


class Pattern(NamedTuple):
    kind: str   # "clique" or "star"
    size: int

    def count(self, g: Graph) -> int:
        if self.kind == "clique":
            return count_cliques(g, self.size)
        return count_stars(g, self.size)

    def __str__(self) -> str:
        return f"K{self.size}" if self.kind == "clique" else f"S{self.size}"


def clique(t: int) -> Pattern:
    return Pattern("clique", t)


def star(t: int) -> Pattern:
    return Pattern("star", t)


# --- canonical form -----------------------------------------------------------


def _refine(adj: tuple[int, ...], n: int) -> list[int]:
    """Stable colour refinement started from degrees; colours are canonical ranks."""
    colors = [row.bit_count() for row in adj]
    num = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in range(n) if adj[v] >> u & 1)))
            for v in range(n)
        ]
        ranks = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == num:
            return colors
        num = len(ranks)


def canonical_form(g: Graph) -> int:
    """Isomorphism-invariant code: equal codes iff the graphs are isomorphic.

    Vertices are ordered consistently with the refined colouring; among those
    orderings we take the one maximizing the upper-triangle bit string read
    column by column.  Ties are branched, except that interchangeable twins
    are explored once.  The code is ``1 << C(n,2) | bits`` so graphs of
    different orders never collide.
    """
    n, adj = g.n, g.adj
    if n == 1:
        return 1
    colors = _refine(adj, n)
    slot_color = sorted(colors)
    best: list[int] = []

    def dfs(j: int, cols: list[int], remaining: int, colvals: list[int]):
        nonlocal best
        if j == n:
            if cols > best:
                best = cols[:]
            return
        c = slot_color[j]
        cands = [v for v in range(n) if remaining >> v & 1 and colors[v] == c]
        m = max(colvals[v] for v in cands)
        cols.append(m)
        if best and cols < best[: j + 1]:
            cols.pop()
            return
        seen_rows: set[int] = set()
        for v in cands:
            if colvals[v] != m:
                continue
            # swapping two unplaced twins is an automorphism fixing the prefix
            key_false, key_true = adj[v], adj[v] | 1 << v
            if key_false in seen_rows or key_true in seen_rows:
                continue
            seen_rows.add(key_false)
            seen_rows.add(key_true)
            nxt = [(cv << 1) | (adj[u] >> v & 1) for u, cv in enumerate(colvals)]
            dfs(j + 1, cols, remaining & ~(1 << v), nxt)
        cols.pop()

    dfs(0, [], (1 << n) - 1, [0] * n)
    code = 1
    for j, col in enumerate(best):
        code = (code << j) | col
    return code


def from_canonical(n: int, code: int) -> Graph:
    """Rebuild the canonically labelled graph from its code."""
    cols = []
    for j in range(n - 1, 0, -1):
        cols.append(code & ((1 << j) - 1))
        code >>= j
    cols.reverse()
    adj = [0] * n
    for j, col in enumerate(cols, start=1):
        for i in range(j):
            if col >> (j - 1 - i) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph._trusted(n, adj)


# --- enumeration ------------------------------------------------------------


def _admissible(adj: list[int], new: int, nbrs: int, forbid: Optional[Pattern]) -> bool:
    """Can vertex ``new`` join with neighbourhood ``nbrs`` without creating ``forbid``?"""
    if forbid is None:
        return True
    if forbid.kind == "star":
        r = forbid.size - 1
        if nbrs.bit_count() > r:
            return False
        return all(adj[u].bit_count() < r for u in range(new) if nbrs >> u & 1)
    return not _has_clique(tuple(adj), nbrs, forbid.size - 1)


@lru_cache(maxsize=None)
def _level(n: int, forbid: Optional[Pattern]) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph._trusted(1, (0,)),)
    found: dict[int, None] = {}
    for h in _level(n - 1, forbid):
        base = list(h.adj)
        for nbrs in range(1 << (n - 1)):
            if not _admissible(base, n - 1, nbrs, forbid):
                continue
            adj = [row | (1 << (n - 1)) if nbrs >> u & 1 else row for u, row in enumerate(base)]
            adj.append(nbrs)
            found.setdefault(canonical_form(Graph._trusted(n, adj)))
    return tuple(from_canonical(n, code) for code in sorted(found))


def all_graphs(n: int, forbid: Optional[Pattern] = None) -> tuple[Graph, ...]:
    """One canonically labelled graph per isomorphism class on n vertices,
    optionally restricted to ``forbid``-free graphs.  Sorted by canonical code."""
    if not 1 <= n <= MAX_BRUTE_N:
        raise ValueError(f"exhaustive search needs 1 <= n <= {MAX_BRUTE_N}, got {n}")
    if forbid is not None and forbid.size < 1:
        raise ValueError("forbidden pattern must have size >= 1")
    return _level(n, forbid)


def random_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 2) -> Iterator[Graph]:
    """Seeded G(n, p) samples with n uniform in [min_n, max_n] and p uniform in (0, 1)."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        p = float(rng.uniform(0.05, 0.95))
        upper = np.triu(rng.random((n, n)) < p, k=1)
        edges = zip(*np.nonzero(upper))
        yield Graph.from_edges(n, ((int(u), int(v)) for u, v in edges))


# --- extremal search ----------------------------------------------------------


@dataclass(frozen=True)
class ExtremalCertificate:
    n: int
    value: Union[int, Fraction]
    witnesses: tuple[Graph, ...]
    searched: int = 0


def brute_ex(n: int, target: Pattern, forbid: Pattern) -> ExtremalCertificate:
    """Exact maximum of target count over forbid-free graphs on n vertices."""
    graphs = all_graphs(n, forbid)
    counts = [target.count(g) for g in graphs]
    best = max(counts)
    witnesses = tuple(g for g, c in zip(graphs, counts) if c == best)
    return ExtremalCertificate(n, best, witnesses, len(graphs))


def check_multipartite_theorem(n: int, r: int, t: int) -> bool:
    """Are all K_{r+1}-free maximizers of s_t on n vertices complete multipartite?"""
    if n < t + 1:
        raise ValueError(f"the statement needs n >= t+1, got n={n}, t={t}")
    cert = brute_ex(n, star(t), clique(r + 1))
    return all(is_complete_multipartite(g) for g in cert.witnesses)


def min_stars_given_cliques(n: int, r: int, t: int, kt_min: int) -> int:
    """Minimum s_{r+1} over all graphs on n vertices with k_t >= kt_min."""
    if kt_min > math.comb(n, t):
        raise ValueError(f"infeasible: kt_min={kt_min} exceeds C({n}, {t})")
    return min(
        count_stars(g, r + 1) for g in all_graphs(n) if count_cliques(g, t) >= kt_min
    )


# --- partitions ---------------------------------------------------------------


def partitions(n: int, max_parts: int, max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into at most max_parts parts, reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        if first * max_parts < n:
            break
        for rest in partitions(n - first, max_parts - 1, first):
            yield (first,) + rest


EXHAUSTIVE_PARTITION_N = 40


def brute_multipartite_ex(n: int, r: int, t: int) -> tuple[PartitionProfile, int]:
    """Best part sizes for s_t among complete multipartite graphs with <= r parts.

    Exhaustive over partitions for n <= 40 (ties go to the first profile in
    reverse lexicographic order); above that an exact dynamic programme over
    part sizes.
    """
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    if n <= EXHAUSTIVE_PARTITION_N:
        best = max(partitions(n, r), key=lambda p: multipartite_star_count(p, t))
        return PartitionProfile(best), multipartite_star_count(best, t)
    return _partition_dp(n, r, t)


def _partition_dp(n: int, r: int, t: int) -> tuple[PartitionProfile, int]:
    # best[m] for the current number of parts: (value, parts sorted desc) over
    # multisets of at most k parts summing to m
    gain = [p * math.comb(n - p, t) for p in range(n + 1)]
    best: list[Optional[tuple[int, tuple[int, ...]]]] = [None] * (n + 1)
    best[0] = (0, ())
    for _ in range(r):
        nxt = list(best)
        for m in range(1, n + 1):
            for p in range(1, m + 1):
                prev = best[m - p]
                if prev is None:
                    continue
                cand = (prev[0] + gain[p], tuple(sorted(prev[1] + (p,), reverse=True)))
                if nxt[m] is None or cand > nxt[m]:
                    nxt[m] = cand
        best = nxt
    value, parts = best[n]
    return PartitionProfile(parts), value


def grid_search_skew(r: int, t: int, points: int = 1_000_000) -> tuple[float, float]:
    """Max of (r-1) f(x) + f(1 - (r-1) x), f(x) = x(1-x)^t, on a uniform x grid.

    Returns (value, x).  Plain numpy, no root finding.
    """
    x = np.linspace(0.0, 1.0 / (r - 1), points + 1)
    y = np.clip(1.0 - (r - 1) * x, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        vals = (r - 1) * x * np.exp(t * np.log1p(-x)) + y * np.exp(t * np.log1p(-y))
    i = int(np.argmax(vals))
    return float(vals[i]), float(x[i])
