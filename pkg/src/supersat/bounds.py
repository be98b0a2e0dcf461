"""Closed-form extremal numbers and supersaturation certificates.

Counting conventions: k_t is the number of t-cliques, s_r = sum_v C(d(v), r)
the number of stars K_{1,r}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph_core import Graph, count_cliques
from .realfn import GenBinomial, composite

_THETA_BISECT = 200


def ex_cliques_no_star(n: int, r: int, t: int) -> Fraction:
    """Upper bound (n/t) C(r, t-1) on k_t over graphs with maximum degree <= r.

    Returned as an exact rational; it is attained by disjoint copies of
    K_{r+1} whenever (r+1) divides n.
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    return Fraction(n, t) * math.comb(r, t - 1)


def ex_stars_no_star(n: int, r: int, t: int) -> int:
    """Maximum s_t over n-vertex graphs with maximum degree <= r."""
    if n < r + 1:
        raise ValueError(f"need n >= r+1, got n={n}, r={r}")
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    if n * r % 2 == 0:
        return n * math.comb(r, t)
    # n and r both odd, so n >= r+2 and the near-regular sequence is graphical
    return (n - 1) * math.comb(r, t) + math.comb(r - 1, t)


def star_star_supersat(n: int, r: int, t: int, eps: float) -> float:
    """Guaranteed number of S_{r+1} given an excess of eps*n*C(r,t) copies of S_t."""
    if t > r:
        raise ValueError(f"need t <= r, got r={r}, t={t}")
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    return eps * n * (r - t + 1) / t


@dataclass(frozen=True)
class SupersatBound:
    """Certificate: k_t(G) >= threshold * n implies s_{r+1}(G) >= delta * n."""

    r: int
    t: int
    epsilon: float
    threshold: float
    delta: float


def supersat_delta(r: int, t: int, eps: float) -> SupersatBound:
    if not 2 <= t <= r:
        raise ValueError(f"need 2 <= t <= r, got r={r}, t={t}")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    threshold = (1 + eps) * math.comb(r + 1, t) / (r + 1)
    delta = composite(r, t, math.comb(r, t - 1) * (1 + eps))
    return SupersatBound(r, t, float(eps), threshold, delta)


def jensen_star_lower_bound(g: Graph, r: int, t: int) -> float:
    """n * f~(mean of C(d(v), t-1)); a lower bound on s_{r+1}(g) by convexity."""
    if not 2 <= t <= r:
        raise ValueError(f"need 2 <= t <= r, got r={r}, t={t}")
    lam = sum(math.comb(d, t - 1) for d in g.degrees())
    return g.n * composite(r, t, lam / g.n)


def _theta_level(n: int, t: int, theta: float) -> float:
    return GenBinomial(t)(theta) * (n / theta) ** t


def theta_clique_bound(n: int, kt: float, t: int, s: int) -> float:
    """Lower bound on k_s from k_t via the real parameter theta.

    Solves C(theta, t) (n/theta)^t = kt for theta >= s-1 and returns
    C(theta, s) (n/theta)^s, or 0 when no admissible theta exists.
    """
    if not 2 <= t <= s:
        raise ValueError(f"need 2 <= t <= s, got t={t}, s={s}")
    if kt < 0:
        raise ValueError("kt must be >= 0")
    if kt > math.comb(n, t):
        raise ValueError(f"kt={kt} exceeds C({n}, {t}); inconsistent input")
    lo, hi = float(max(t - 1, s - 1)), float(n)
    if kt == 0 or lo >= hi or _theta_level(n, t, lo) > kt:
        return 0.0
    # C(theta,t)/theta^t is increasing in theta, so bisect on [lo, n]
    for _ in range(_THETA_BISECT):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _theta_level(n, t, mid) < kt:
            lo = mid
        else:
            hi = mid
    theta = hi if abs(_theta_level(n, t, hi) - kt) <= abs(_theta_level(n, t, lo) - kt) else lo
    return GenBinomial(s)(theta) * (n / theta) ** s


def moon_moser_check(g: Graph, s: int) -> Optional[float]:
    """Residual of the Moon-Moser inequality; None when a denominator vanishes.

    The inequality reads k_{s+1}/k_s >= (s^2 k_s/k_{s-1} - n)/(s^2 - 1), so the
    theorem says the returned value is >= 0.  Computed exactly, then rounded.
    """
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    ks = count_cliques(g, s)
    ks_prev = count_cliques(g, s - 1)
    if ks == 0 or ks_prev == 0:
        return None
    ks_next = count_cliques(g, s + 1) if s + 1 <= g.n else 0
    lhs = Fraction(ks_next, ks)
    rhs = (s * s * Fraction(ks, ks_prev) - g.n) / (s * s - 1)
    return float(lhs - rhs)


def sharpness_ratio(r: int, t: int, s: int) -> Fraction:
    """k_t(kK_{s+1}) divided by the supersaturation threshold (n/(r+1)) C(r+1, t)."""
    return Fraction(math.comb(s, t - 1) * (r + 1), t * math.comb(r + 1, t))


__all__ = [
    "SupersatBound",
    "ex_cliques_no_star",
    "ex_stars_no_star",
    "jensen_star_lower_bound",
    "moon_moser_check",
    "sharpness_ratio",
    "star_star_supersat",
    "supersat_delta",
    "theta_clique_bound",
]
