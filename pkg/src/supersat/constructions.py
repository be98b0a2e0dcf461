"""Generators for the extremal and sharpness constructions.

Labeling convention: parts of a complete multipartite graph occupy
consecutive index ranges, largest part first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

from .graph_core import MAX_VERTICES, CapacityError, Graph


@dataclass(frozen=True)
class PartitionProfile:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a profile needs at least one part")
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"parts must be positive integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be nonincreasing: {parts}")

    @classmethod
    def of(cls, parts: Sequence[int]) -> "PartitionProfile":
        """Build from any ordering; zero parts are dropped."""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


ProfileLike = Union[PartitionProfile, Sequence[int]]


def _profile(p: ProfileLike) -> PartitionProfile:
    return p if isinstance(p, PartitionProfile) else PartitionProfile.of(p)


def balanced_profile(n: int, r: int) -> PartitionProfile:
    """Part sizes of T(n, r): the first n mod r parts get the extra vertex."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    q, extra = divmod(n, r)
    return PartitionProfile(tuple([q + 1] * extra + [q] * (r - extra)))


def complete_multipartite(p: ProfileLike) -> Graph:
    profile = _profile(p)
    n = profile.n
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds {MAX_VERTICES}")
    full = (1 << n) - 1
    adj = []
    start = 0
    for size in profile.parts:
        block = ((1 << size) - 1) << start
        adj.extend([full & ~block] * size)
        start += size
    return Graph._trusted(n, adj)


def turan_graph(n: int, r: int) -> Graph:
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds {MAX_VERTICES}")
    return complete_multipartite(balanced_profile(n, r))


def disjoint_cliques(k: int, s1: int) -> Graph:
    """k vertex-disjoint copies of K_{s1}."""
    if k < 1 or s1 < 1:
        raise ValueError("k and s1 must be >= 1")
    n = k * s1
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds {MAX_VERTICES}")
    adj = []
    for c in range(k):
        block = ((1 << s1) - 1) << (c * s1)
        for i in range(s1):
            adj.append(block & ~(1 << (c * s1 + i)))
    return Graph._trusted(n, adj)


def blowup(g: Graph, b: int) -> Graph:
    """Replace each vertex v by the independent set {v*b, ..., v*b + b - 1}."""
    if b < 1:
        raise ValueError("blowup factor must be >= 1")
    n = g.n * b
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds {MAX_VERTICES}")
    block = (1 << b) - 1
    adj = []
    for row in g.adj:
        new = 0
        for u in range(g.n):
            if row >> u & 1:
                new |= block << (u * b)
        adj.extend([new] * b)
    return Graph._trusted(n, adj)


def multipartite_star_count(p: ProfileLike, t: int) -> int:
    """Exact s_t of the complete multipartite graph with these part sizes."""
    profile = _profile(p)
    n = profile.n
    return sum(size * comb(n - size, t) for size in profile.parts)
