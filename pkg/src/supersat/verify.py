"""Property suites run by ``supersat verify``.

Each suite yields :class:`Check` records, one per checked instance or group of
instances.  Suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from typing import Callable, Iterable, Iterator

import numpy as np

from . import graphon_opt as go
from .bounds import jensen_star_lower_bound, moon_moser_check, supersat_delta
from .constructions import complete_multipartite
from .graph_core import (
    clone_vertex,
    count_stars,
    delete_vertex,
    is_complete_multipartite,
    vertex_delta,
)
from .oracle import (
    all_graphs,
    brute_ex,
    canonical_form,
    clique,
    grid_search_skew,
    min_stars_given_cliques,
    random_graphs,
    star,
)
from .realfn import GenBinomial, compose


@dataclass(frozen=True)
class Check:
    name: str
    instance: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" {self.detail}" if self.detail else ""
        return f"{status} {self.name} {self.instance}{tail}"


SUPERSAT_PAIRS = ((2, 2), (3, 2), (3, 3), (4, 3), (5, 3))


def _jensen_ok(bound: float, actual: int) -> bool:
    # the bound is exact for regular graphs, so allow rounding in the float path
    return bound <= actual + 1e-9 * max(1.0, actual)


# --- suites -----------------------------------------------------------------


def moonmoser(max_n: int = 7, seed: int = 0, random_count: int = 500,
              random_max_n: int = 24, complete_max_n: int = 10) -> Iterator[Check]:
    def worst(graphs: Iterable) -> tuple[int, int, float]:
        count = applicable = 0
        low = math.inf
        for g in graphs:
            count += 1
            for s in range(2, g.n + 1):
                res = moon_moser_check(g, s)
                if res is not None:
                    applicable += 1
                    low = min(low, res)
        return count, applicable, low

    for n in range(2, max_n + 1):
        count, applicable, low = worst(all_graphs(n))
        ok = applicable == 0 or low >= -1e-12
        yield Check("moonmoser", f"n={n}", ok, f"graphs={count} applicable={applicable} min_residual={low:.3g}")
    count, applicable, low = worst(random_graphs(random_count, random_max_n, seed))
    yield Check("moonmoser", f"random count={count} max_n={random_max_n} seed={seed}",
                low >= -1e-12, f"applicable={applicable} min_residual={low:.3g}")
    for n in range(3, complete_max_n + 1):
        g = complete_multipartite([1] * n)
        res = [moon_moser_check(g, s) for s in range(2, n)]
        yield Check("moonmoser-equality", f"K{n}", all(abs(x) <= 1e-12 for x in res),
                    f"max_abs_residual={max(abs(x) for x in res):.3g}")


def convexity_grid(s: int, t: int, points: int = 1000, x_max_arg: int = 100) -> tuple[bool, bool, float]:
    """Second differences of f_s o f_t^{-1} on an open uniform grid over (0, f_t(x_max_arg)).

    Returns (all >= -slack, strictly positive beyond C(s-1, t), min scaled diff).
    """
    top = float(GenBinomial(t)(x_max_arg))
    xs = top * np.arange(1, points + 1) / (points + 1)
    vals = np.array([compose(s, t, float(x)) for x in xs])
    d2 = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    mag = np.maximum(np.maximum(np.abs(vals[:-2]), np.abs(vals[1:-1])), np.abs(vals[2:]))
    convex = bool(np.all(d2 >= -1e-9 * (1.0 + mag)))
    beyond = xs[1:-1] > math.comb(s - 1, t)
    strict = bool(np.all(d2[beyond] > 0.0))
    return convex, strict, float(np.min(d2 / (1.0 + mag)))


def convexity(max_s: int = 10, points: int = 1000) -> Iterator[Check]:
    for s in range(2, max_s + 1):
        for t in range(1, s):
            convex, strict, low = convexity_grid(s, t, points)
            yield Check("convexity", f"t={t} s={s}", convex and strict,
                        f"convex={convex} strict={strict} min_scaled_d2={low:.3g}")


MULTIPARTITE_PAIRS = tuple((r, t) for r in (2, 3, 4) for t in (2, 3, 4))


def multipartite(max_n: int = 7, pairs=MULTIPARTITE_PAIRS) -> Iterator[Check]:
    for r, t in pairs:
        for n in range(t + 1, max_n + 1):
            cert = brute_ex(n, star(t), clique(r + 1))
            ok = all(is_complete_multipartite(g) for g in cert.witnesses)
            yield Check("multipartite", f"n={n} r={r} t={t}", ok,
                        f"value={cert.value} maximizers={len(cert.witnesses)} searched={cert.searched}")
        if t >= r and t + 1 <= max_n:
            yield base_case(r, t)


def base_case_profile(r: int, t: int) -> list[int]:
    """Unique maximizer on t+1 vertices for t >= r: r-1 dominating vertices
    plus an independent set of size t-r+2."""
    return [t - r + 2] + [1] * (r - 1)


def base_case(r: int, t: int) -> Check:
    cert = brute_ex(t + 1, star(t), clique(r + 1))
    expected = complete_multipartite(base_case_profile(r, t))
    ok = len(cert.witnesses) == 1 and canonical_form(cert.witnesses[0]) == canonical_form(expected)
    return Check("multipartite-base", f"n={t + 1} r={r} t={t}", ok,
                 f"maximizers={len(cert.witnesses)} expected=K_{{{','.join(map(str, base_case_profile(r, t)))}}}")


def supersat(max_n: int = 7, seed: int = 0, random_count: int = 1000, random_max_n: int = 24,
             pairs=SUPERSAT_PAIRS, eps_values=(Fraction(1, 10), Fraction(1, 2), Fraction(1))) -> Iterator[Check]:
    exhaustive = list(chain.from_iterable(all_graphs(n) for n in range(1, max_n + 1)))
    sampled = list(random_graphs(random_count, random_max_n, seed))
    for r, t in pairs:
        for label, graphs in (("exhaustive", exhaustive), ("random", sampled)):
            bad = sum(not _jensen_ok(jensen_star_lower_bound(g, r, t), count_stars(g, r + 1)) for g in graphs)
            yield Check("jensen", f"r={r} t={t} {label} graphs={len(graphs)}", bad == 0, f"violations={bad}")
    for r, t in pairs:
        for eps in eps_values:
            delta = supersat_delta(r, t, float(eps)).delta
            checked = bad = 0
            for n in range(2, max_n + 1):
                level = (1 + eps) * n * math.comb(r + 1, t) / (r + 1)
                kt_min = math.ceil(level)
                if kt_min > math.comb(n, t):
                    continue
                checked += 1
                if min_stars_given_cliques(n, r, t, kt_min) < delta * n - 1e-9 * max(1.0, delta * n):
                    bad += 1
            yield Check("supersat-min", f"r={r} t={t} eps={eps}", bad == 0,
                        f"delta={delta:.6g} solvable={checked} violations={bad}")


def deltas(count: int = 200, seed: int = 0, max_n: int = 16, orders=(1, 2, 3, 4)) -> Iterator[Check]:
    bad = total = 0
    for g in random_graphs(count, max_n, seed):
        for x in range(g.n):
            cloned = clone_vertex(g, x)
            deleted = delete_vertex(g, x)
            for t in orders:
                total += 1
                base = count_stars(g, t)
                dv = vertex_delta(g, x, t)
                if (count_stars(cloned, t) - base != dv.b_plus
                        or base - count_stars(deleted, t) != dv.b_minus
                        or dv.b_plus < dv.b_minus):
                    bad += 1
    yield Check("deltas", f"random count={count} max_n={max_n} seed={seed}", bad == 0,
                f"instances={total} violations={bad}")


def legal_pairs(max_r: int = 12, max_t: int = 40) -> list[tuple[int, int]]:
    return [(r, t) for r in range(2, max_r + 1) for t in range(2, max_t + 1) if go.is_legal(r, t)]


def optimizer_checks(r: int, t: int, grid_points: int = 1_000_000, samples: int = 7) -> list[Check]:
    """Internal consistency of the optimizer at one (r, t)."""
    inst = f"r={r} t={t}"
    params = go.OptParams(r, t)
    out = []
    try:
        roots = go.find_skew_roots(params, r - 1, 1)
        out.append(Check("opt-roots", inst, len(roots) <= 2, f"roots={len(roots)}"))
    except RuntimeError as exc:
        return [Check("opt-roots", inst, False, str(exc))]
    res = go.solve(params)
    w = res.winner
    if w.kind == "skew":
        kkt = max(abs(go.g_rho(t, w.alpha) - w.phi), abs(go.g_rho(t, w.beta) - w.phi))
        simplex = abs(w.a * w.alpha + w.b * w.beta - 1.0)
    else:
        kkt = simplex = 0.0
    profile = w.profile()
    g_vals = [go.g_rho(t, x) for x in profile.rho]
    kkt = max(kkt, max(g_vals) - min(g_vals))
    out.append(Check("opt-kkt", inst, kkt <= 1e-10 and simplex <= 1e-12,
                     f"winner={w.kind} kkt={kkt:.3g} simplex={simplex:.3g}"))
    values = [go.F_ab(params, r - 1, 1, phi) for phi in roots]
    largest_best = all(values[0] >= v for v in values)
    out.append(Check("opt-largest-root", inst, largest_best, f"values={['%.12g' % v for v in values]}"))
    grid_val, _ = grid_search_skew(r, t, grid_points)
    out.append(Check("opt-grid-oracle", inst, abs(grid_val - w.value) <= 1e-8,
                     f"grid={grid_val:.15g} winner={w.value:.15g}"))
    # dF/dphi = phi dL/dphi, by central differences of F and L
    lo, hi = params.phi_min, 0.0
    phis = lo + (hi - lo) * np.linspace(0.1, 0.9, samples)
    eps = 1e-6 * abs(lo)
    worst = 0.0
    for phi in phis:
        dF = (go.F_ab(params, r - 1, 1, phi + eps) - go.F_ab(params, r - 1, 1, phi - eps)) / (2 * eps)
        dL = go.dL_dphi(params, r - 1, 1, phi)
        al, be = go.alpha_of_phi(params, phi), go.beta_of_phi(params, phi)
        scale = abs(phi) * ((r - 1) / abs(go.h_rho(t, al)) + 1 / abs(go.h_rho(t, be)))
        worst = max(worst, abs(dF - phi * dL) / scale)
    out.append(Check("opt-dF-identity", inst, worst <= 1e-5, f"max_rel_err={worst:.3g}"))
    # dL/dphi <= 0 for phi <= phi*
    span = np.linspace(0.0, 1.0, 202)[1:]
    phis = params.phi_min + (params.phi_star - params.phi_min) * span
    dl = np.asarray(go.dL_dphi(params, r - 1, 1, phis))
    out.append(Check("opt-dL-sign", inst, bool(np.all(dl <= 1e-10)), f"max_dL={float(np.max(dl)):.3g}"))
    return out


def optimizer_oracle(max_r: int = 12, max_t: int = 40, grid_points: int = 1_000_000) -> Iterator[Check]:
    for r, t in legal_pairs(max_r, max_t):
        yield from optimizer_checks(r, t, grid_points)


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "moonmoser": lambda max_n, seed: moonmoser(max_n=max_n, seed=seed),
    "convexity": lambda max_n, seed: convexity(),
    "multipartite": lambda max_n, seed: multipartite(max_n=max_n),
    "supersat": lambda max_n, seed: supersat(max_n=max_n, seed=seed),
    "deltas": lambda max_n, seed: deltas(seed=seed),
    "optimizer-oracle": lambda max_n, seed: optimizer_oracle(),
}


def run_suite(name: str, max_n: int = 7, seed: int = 0) -> Iterator[Check]:
    if name == "all":
        for key in SUITES:
            yield from SUITES[key](max_n, seed)
        return
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    yield from SUITES[name](max_n, seed)
