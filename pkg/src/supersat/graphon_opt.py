"""Part proportions maximizing the star density of complete multipartite graphs.

Problem: maximize ``F(rho) = sum_i rho_i (1 - rho_i)**t`` over the simplex
``{rho in R^r : rho_i >= 0, sum rho_i = 1}``.  This is the normalized limit
of ``s_t / n**(t+1) * t!`` for complete r-partite graphs.

Interior critical points have ``g(rho_i)`` constant, where ``g = f'`` and
``f(rho) = rho (1 - rho)**t``.  Besides the Turan point ``(1/r, ..., 1/r)``
they are the *skew* points: ``a`` coordinates equal to ``alpha`` and ``b``
equal to ``beta`` with ``alpha < 2/(t+1) < beta`` and
``g(alpha) = g(beta) = phi``.  For fixed ``(a, b)`` both ``alpha`` and
``beta`` are functions of ``phi`` on ``(phi_min, 0]``, and skew points are
the roots of ``L(phi) = a*alpha + b*beta = 1``.

Functions of ``rho`` or ``phi`` accept scalars or numpy arrays.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .oracle import grid_search_skew

log = logging.getLogger(__name__)

MAX_T = 100_000
LOG_POW_T = 500          # at and above this t, (1-rho)**e goes through exp/log1p
ROOT_GRID = 10_000
GRID_LO_OFFSET = 1e-9    # grid starts at phi_min + this
GRID_HI = -1e-12
TAIL_POINTS = 289        # geometric grid on [-1e-12, -1e-300], one per decade
TAIL_END = -1e-300
COALESCE_TOL = 1e-9
TIE_MARGIN = 1e-10


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _check_t(t: int) -> None:
    if not isinstance(t, (int, np.integer)) or not 1 <= t <= MAX_T:
        raise ValueError(f"t must be an integer in 1..{MAX_T}, got {t!r}")


def _check_rho(rho) -> np.ndarray:
    arr = np.asarray(rho, dtype=float)
    if np.any(~(arr >= 0.0)) or np.any(arr > 1.0):
        raise ValueError("rho must lie in [0, 1]")
    return arr


def _pow1m(rho: np.ndarray, e: int, t: int) -> np.ndarray:
    """(1 - rho)**e, via exp(e*log1p(-rho)) for large t."""
    if e == 0:
        return np.ones_like(rho)
    if t >= LOG_POW_T:
        with np.errstate(divide="ignore"):
            return np.exp(e * np.log1p(-rho))
    return (1.0 - rho) ** e


def f_rho(t: int, rho):
    """rho (1 - rho)**t."""
    _check_t(t)
    x = _check_rho(rho)
    return _out(x * _pow1m(x, t, t))


def g_rho(t: int, rho):
    """First derivative of f: (1 - rho)**(t-1) (1 - (t+1) rho)."""
    _check_t(t)
    x = _check_rho(rho)
    return _out(_pow1m(x, t - 1, t) * (1.0 - (t + 1) * x))


def h_rho(t: int, rho):
    """Second derivative of f: t (1 - rho)**(t-2) ((t+1) rho - 2)."""
    _check_t(t)
    if t < 2:
        raise ValueError("h needs t >= 2")
    x = _check_rho(rho)
    return _out(t * _pow1m(x, t - 2, t) * ((t + 1) * x - 2.0))


def f_deriv_k(t: int, k: int, rho):
    """k-th derivative of f: (-1)^k t(t-1)...(t-k+2) (1-rho)^(t-k) ((t+1) rho - k)."""
    _check_t(t)
    if not 1 <= k <= t:
        raise ValueError(f"need 1 <= k <= t, got k={k}, t={t}")
    x = _check_rho(rho)
    falling = math.prod(range(t - k + 2, t + 1))
    return _out((-1) ** k * falling * _pow1m(x, t - k, t) * ((t + 1) * x - k))


@dataclass(frozen=True)
class OptParams:
    r: int
    t: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError(f"r must be an integer >= 2, got {self.r!r}")
        if not isinstance(self.t, int) or not 2 <= self.t <= MAX_T:
            raise ValueError(f"t must be an integer in 2..{MAX_T}, got {self.t!r}")

    @cached_property
    def phi_min(self) -> float:
        """Minimum of g on [0, 1], attained at 2/(t+1)."""
        return g_rho(self.t, 2.0 / (self.t + 1))

    @cached_property
    def phi_star(self) -> float:
        """g(3/(t+1)); above it L_{a,b} is convex in phi."""
        return g_rho(self.t, min(1.0, 3.0 / (self.t + 1)))

    @property
    def legal(self) -> bool:
        return is_legal(self.r, self.t)


# --- the two branches of g^{-1} -------------------------------------------

_BRANCH_ITERS = 80


def _check_phi(params: OptParams, phi) -> np.ndarray:
    p = np.asarray(phi, dtype=float)
    if not np.all((p > params.phi_min) & (p <= 0.0)):
        raise ValueError(f"phi must lie in (phi_min, 0] = ({params.phi_min!r}, 0]")
    return p


def _branch(params: OptParams, phi: np.ndarray, upper: bool) -> np.ndarray:
    t = params.t
    mid_pt = 2.0 / (t + 1)
    if upper:
        lo = np.full(phi.shape, mid_pt)
        hi = np.ones(phi.shape)
    else:
        lo = np.full(phi.shape, 1.0 / (t + 1))
        hi = np.full(phi.shape, mid_pt)
    for _ in range(_BRANCH_ITERS):
        mid = 0.5 * (lo + hi)
        gm = _pow1m(mid, t - 1, t) * (1.0 - (t + 1) * mid)
        # g decreases on the lower branch and increases on the upper one
        go_right = gm < phi if upper else gm > phi
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    # g's zeros are known exactly; bisection near 1 would stall on underflow
    at_zero = 1.0 if upper else 1.0 / (t + 1)
    return np.where(phi == 0.0, at_zero, 0.5 * (lo + hi))


def alpha_of_phi(params: OptParams, phi):
    """Solution of g(rho) = phi in [1/(t+1), 2/(t+1))."""
    return _out(_branch(params, _check_phi(params, phi), upper=False))


def beta_of_phi(params: OptParams, phi):
    """Solution of g(rho) = phi in (2/(t+1), 1]."""
    return _out(_branch(params, _check_phi(params, phi), upper=True))


def _check_ab(params: OptParams, a: int, b: int) -> None:
    if a < 1 or b < 1 or a + b != params.r:
        raise ValueError(f"need a, b >= 1 with a + b = r = {params.r}, got a={a}, b={b}")


def L_ab(params: OptParams, a: int, b: int, phi):
    """a*alpha(phi) + b*beta(phi); skew points are where this equals 1."""
    _check_ab(params, a, b)
    p = _check_phi(params, phi)
    return _out(a * _branch(params, p, False) + b * _branch(params, p, True))


def F_ab(params: OptParams, a: int, b: int, phi):
    """Objective a*f(alpha(phi)) + b*f(beta(phi)) along the skew family."""
    _check_ab(params, a, b)
    p = _check_phi(params, phi)
    t = params.t
    al, be = _branch(params, p, False), _branch(params, p, True)
    return _out(a * al * _pow1m(al, t, t) + b * be * _pow1m(be, t, t))


def dL_dphi(params: OptParams, a: int, b: int, phi):
    """a/h(alpha) + b/h(beta), for phi strictly inside (phi_min, 0)."""
    _check_ab(params, a, b)
    p = _check_phi(params, phi)
    if np.any(p >= 0.0):
        raise ValueError("dL/dphi is only defined for phi < 0")
    al, be = _branch(params, p, False), _branch(params, p, True)
    ha, hb = h_rho(params.t, al), h_rho(params.t, be)
    if np.any(np.asarray(ha) == 0.0) or np.any(np.asarray(hb) == 0.0):
        raise ValueError("h vanishes at this phi (coalescence); derivative undefined")
    return _out(a / np.asarray(ha) + b / np.asarray(hb))


# --- root finding -----------------------------------------------------------

_ROOT_ITERS = 200


def _L_minus_one(params: OptParams, a: int, b: int, phi: np.ndarray) -> np.ndarray:
    return a * _branch(params, phi, False) + b * _branch(params, phi, True) - 1.0


def find_skew_roots(params: OptParams, a: int, b: int) -> list[float]:
    """All roots of L_{a,b}(phi) = 1 in (phi_min, 0), largest first.

    Sign changes on a uniform grid are refined by bisection in phi until the
    bracket cannot shrink further.  For large t the largest root can sit far
    closer to 0 than the uniform grid reaches (beta near 1 makes g(beta)
    astronomically small), so a geometric tail down to -1e-300 is scanned as
    well and its brackets are split geometrically.  If L is still below 1 at
    the end of the tail the root is not representable; it is reported as
    TAIL_END and ``solve`` treats it as degenerate.
    """
    _check_ab(params, a, b)
    uniform = np.linspace(params.phi_min + GRID_LO_OFFSET, GRID_HI, ROOT_GRID)
    tail = np.geomspace(GRID_HI, TAIL_END, TAIL_POINTS)[1:]
    grid = np.concatenate([uniform, tail])
    vals = _L_minus_one(params, a, b, grid)
    exact = grid[vals == 0.0]
    change = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    lo, hi = grid[change], grid[change + 1]
    lo_sign = np.sign(vals[change])
    for _ in range(_ROOT_ITERS):
        # grid is ascending, so lo < hi; split geometrically while lo/hi > 2
        with np.errstate(divide="ignore", invalid="ignore"):
            wide = (hi < 0.0) & (lo / hi > 2.0)
        mid = np.where(wide, -np.sqrt(np.abs(lo) * np.abs(hi)), 0.5 * (lo + hi))
        if np.all((mid == lo) | (mid == hi)):
            break
        vm = _L_minus_one(params, a, b, mid)
        same = np.sign(vm) == lo_sign
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    roots = []
    for l, h in zip(lo, hi):
        vl, vh = _L_minus_one(params, a, b, np.array([l, h]))
        roots.append(float(l if abs(vl) <= abs(vh) else h))
    roots.extend(float(x) for x in exact)
    if vals[-1] < 0.0:
        # L(0) = a/(t+1) + b > 1, so a root lies in (TAIL_END, 0)
        roots.append(TAIL_END)
    roots.sort(reverse=True)
    if a == params.r - 1 and params.legal and len(roots) > 2:
        raise RuntimeError(
            f"found {len(roots)} roots of L_(r-1,1) = 1 for legal (r, t) = "
            f"({params.r}, {params.t}); at most two are possible"
        )
    return roots


# --- critical points --------------------------------------------------------


@dataclass(frozen=True)
class DensityProfile:
    rho: tuple[float, ...]

    def __post_init__(self):
        rho = tuple(float(x) for x in self.rho)
        object.__setattr__(self, "rho", rho)
        if not rho or any(not x >= 0.0 for x in rho):
            raise ValueError("rho must be a nonempty vector of nonnegative reals")
        if abs(math.fsum(rho) - 1.0) > 1e-12:
            raise ValueError(f"rho must sum to 1, sums to {math.fsum(rho)!r}")

    def value(self, t: int) -> float:
        return math.fsum(x * (1.0 - x) ** t for x in self.rho)


@dataclass(frozen=True)
class CriticalPoint:
    kind: str       # "turan" or "skew"
    a: int
    b: int
    alpha: float
    beta: float
    phi: float
    value: float
    degenerate: bool = False

    def profile(self) -> DensityProfile:
        return DensityProfile((self.alpha,) * self.a + (self.beta,) * self.b)


def turan_point(params: OptParams) -> CriticalPoint:
    r, t = params.r, params.t
    x = 1.0 / r
    return CriticalPoint("turan", r, 0, x, x, g_rho(t, x), (1.0 - x) ** t)


def skew_point(params: OptParams, a: int, b: int, phi: float) -> CriticalPoint:
    al = alpha_of_phi(params, phi)
    be = beta_of_phi(params, phi)
    t = params.t
    value = a * f_rho(t, al) + b * f_rho(t, be)
    return CriticalPoint("skew", a, b, al, be, float(phi), value)


@dataclass(frozen=True)
class SolveResult:
    r: int
    t: int
    legal: bool
    turan: CriticalPoint
    skew: Optional[CriticalPoint]
    winner: CriticalPoint
    candidates: list[CriticalPoint] = field(default_factory=list)
    close: bool = False     # |F_skew - F_turan| <= TIE_MARGIN

    @property
    def margin(self) -> Optional[float]:
        return None if self.skew is None else self.skew.value - self.turan.value

    def to_dict(self) -> dict:
        skew = None
        if self.skew is not None:
            s = self.skew
            skew = {"a": s.a, "b": s.b, "alpha": s.alpha, "beta": s.beta,
                    "phi": s.phi, "value": s.value}
        return {
            "r": self.r,
            "t": self.t,
            "legal": self.legal,
            "turan": {"value": self.turan.value},
            "skew": skew,
            "winner": self.winner.kind,
        }


def solve(params: OptParams) -> SolveResult:
    """Best interior critical point: Turan vs the (r-1, 1) skew point at the largest root."""
    r, t = params.r, params.t
    legal = params.legal
    if not legal:
        log.warning("(r, t) = (%d, %d) is not a legal pair; result is best-effort", r, t)
    turan = turan_point(params)
    candidates = [turan]
    skew = None
    roots = find_skew_roots(params, r - 1, 1)
    if roots:
        phi = roots[0]
        skew = skew_point(params, r - 1, 1, phi)
        if phi - params.phi_min <= COALESCE_TOL or phi == TAIL_END:
            value, _ = grid_search_skew(r, t)
            skew = CriticalPoint("skew", skew.a, skew.b, skew.alpha, skew.beta,
                                 skew.phi, value, degenerate=True)
        candidates.append(skew)
    winner = turan
    close = False
    if skew is not None:
        diff = skew.value - turan.value
        close = abs(diff) <= TIE_MARGIN
        if diff > 0.0:
            winner = skew
        if close:
            log.warning("(r, t) = (%d, %d): Turan and skew values differ by %.3g", r, t, diff)
    return SolveResult(r, t, legal, turan, skew, winner, candidates, close)


# --- legal pairs ------------------------------------------------------------


def is_legal(r: int, t: int) -> bool:
    """Pairs for which the Turan-or-(r-1,1)-skew classification is proven."""
    if r >= 9:
        return t >= 3
    return {8: 4, 7: 5, 6: 37}.get(r, math.inf) <= t


def monotone_inequality_holds(r: int, t: int) -> bool:
    """(1 + (1 + (r-3)/(r-1))/(t-2))**(t-1) <= r - 1, in double precision."""
    if t < 3:
        raise ValueError(f"need t >= 3, got {t}")
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    return (1.0 + (1.0 + (r - 3) / (r - 1)) / (t - 2)) ** (t - 1) <= r - 1


# --- scans ------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    t: int
    winner: str
    turan_value: float
    skew: Optional[CriticalPoint]
    legal: bool
    close: bool = False


def crossover_scan(r: int, t_lo: int, t_hi: int) -> list[ScanRow]:
    if t_lo > t_hi:
        raise ValueError(f"empty range {t_lo}:{t_hi}")
    rows = []
    for t in range(t_lo, t_hi + 1):
        res = solve(OptParams(r, t))
        rows.append(ScanRow(t, res.winner.kind, res.turan.value, res.skew, res.legal, res.close))
    return rows


SCAN_HEADER = "t,winner,turan_value,skew_alpha,skew_beta,skew_phi,skew_value,legal"


def fmt_float(x: float) -> str:
    """17 significant digits, always with a decimal point or exponent."""
    s = format(x, ".17g")
    if not any(c in s for c in ".einf"):
        s += ".0"
    return s


def scan_csv(rows: list[ScanRow]) -> str:
    lines = [SCAN_HEADER]
    for row in rows:
        if row.skew is None:
            skew_fields = ["", "", "", ""]
        else:
            s = row.skew
            skew_fields = [fmt_float(s.alpha), fmt_float(s.beta), fmt_float(s.phi), fmt_float(s.value)]
        lines.append(",".join([str(row.t), row.winner, fmt_float(row.turan_value), *skew_fields,
                               "true" if row.legal else "false"]))
    return "\n".join(lines) + "\n"
