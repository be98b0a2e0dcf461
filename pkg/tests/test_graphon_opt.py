import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq, minimize

from supersat.graphon_opt import (
    MAX_T,
    SCAN_HEADER,
    TAIL_END,
    CriticalPoint,
    DensityProfile,
    F_ab,
    L_ab,
    OptParams,
    alpha_of_phi,
    beta_of_phi,
    crossover_scan,
    dL_dphi,
    f_deriv_k,
    f_rho,
    find_skew_roots,
    fmt_float,
    g_rho,
    h_rho,
    is_legal,
    monotone_inequality_holds,
    scan_csv,
    skew_point,
    solve,
    turan_point,
)
from supersat.oracle import grid_search_skew

RHO = sp.Symbol("rho")


def sym_f(t):
    return RHO * (1 - RHO) ** t


# --- pointwise functions --------------------------------------------------------------


def test_f_examples():
    assert f_rho(6, 0.0) == 0
    assert f_rho(6, 1.0) == 0
    exact = sp.Rational(1, 7) * sp.Rational(6, 7) ** 6
    assert f_rho(6, 1 / 7) == pytest.approx(float(exact), rel=1e-14)
    assert f_rho(6, 1 / 7) == pytest.approx(0.0566527795148, abs=1e-12)


def test_g_h_examples():
    for t in range(2, 30):
        assert g_rho(t, 1 / (t + 1)) == pytest.approx(0, abs=1e-15)
        assert h_rho(t, 2 / (t + 1)) == pytest.approx(0, abs=1e-14)
    exact = -(sp.Rational(5, 7) ** 5)
    assert g_rho(6, 2 / 7) == pytest.approx(float(exact), rel=1e-13)
    assert g_rho(6, 2 / 7) == pytest.approx(-0.185934432082, abs=1e-12)


@pytest.mark.parametrize("t", [2, 3, 5, 8, 13])
def test_derivatives_match_sympy(t):
    f = sym_f(t)
    g = sp.lambdify(RHO, sp.diff(f, RHO))
    h = sp.lambdify(RHO, sp.diff(f, RHO, 2))
    for rho in np.linspace(0, 1, 23):
        assert g_rho(t, rho) == pytest.approx(g(rho), rel=1e-12, abs=1e-13)
        assert h_rho(t, rho) == pytest.approx(h(rho), rel=1e-12, abs=1e-12)
    for k in range(1, t + 1):
        dk = sp.lambdify(RHO, sp.diff(f, RHO, k))
        for rho in np.linspace(0, 1, 11):
            assert f_deriv_k(t, k, rho) == pytest.approx(dk(rho), rel=1e-10, abs=1e-9)


def test_array_inputs():
    xs = np.linspace(0, 1, 5)
    assert np.allclose(f_rho(4, xs), xs * (1 - xs) ** 4)
    assert isinstance(f_rho(4, 0.5), float)


def test_large_t_uses_log_space():
    t = 5000
    x = 1 / (t + 1)
    assert f_rho(t, x) == pytest.approx(x * math.exp(t * math.log1p(-x)), rel=1e-12)
    assert f_rho(t, 0.9) == 0.0 or f_rho(t, 0.9) < 1e-300


def test_domain_errors():
    with pytest.raises(ValueError):
        f_rho(4, 1.5)
    with pytest.raises(ValueError):
        g_rho(4, -0.1)
    with pytest.raises(ValueError):
        f_deriv_k(4, 5, 0.5)
    with pytest.raises(ValueError):
        f_rho(MAX_T + 1, 0.5)


# --- parameters and branches --------------------------------------------------------------


@given(st.integers(2, 8), st.integers(2, 2000))
def test_phi_ordering(r, t):
    p = OptParams(r, t)
    assert p.phi_min <= p.phi_star <= 0
    assert p.phi_min == pytest.approx(g_rho(t, 2 / (t + 1)), rel=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        OptParams(1, 5)
    with pytest.raises(ValueError):
        OptParams(3, 1)


def test_branches_at_zero():
    for t in (2, 5, 13, 40):
        p = OptParams(7, t)
        assert alpha_of_phi(p, 0.0) == pytest.approx(1 / (t + 1), abs=1e-12)
        assert beta_of_phi(p, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_branches_coalesce_at_minimum():
    for t in (3, 6, 13):
        p = OptParams(7, t)
        phi = p.phi_min + 1e-14
        assert alpha_of_phi(p, phi) == pytest.approx(2 / (t + 1), abs=1e-5)
        assert beta_of_phi(p, phi) == pytest.approx(2 / (t + 1), abs=1e-5)


def test_alpha_residual_and_brentq():
    p = OptParams(7, 6)
    a = alpha_of_phi(p, -0.1)
    b = beta_of_phi(p, -0.1)
    assert abs(g_rho(6, a) + 0.1) <= 1e-12
    assert abs(g_rho(6, b) + 0.1) <= 1e-12
    ref_a = brentq(lambda x: g_rho(6, x) + 0.1, 1 / 7, 2 / 7, xtol=1e-15)
    ref_b = brentq(lambda x: g_rho(6, x) + 0.1, 2 / 7, 1, xtol=1e-15)
    assert a == pytest.approx(ref_a, abs=1e-12)
    assert b == pytest.approx(ref_b, abs=1e-12)
    assert 1 / 7 <= a < 2 / 7 < b <= 1


def test_branch_domain():
    p = OptParams(7, 6)
    with pytest.raises(ValueError):
        alpha_of_phi(p, 0.01)
    with pytest.raises(ValueError):
        beta_of_phi(p, p.phi_min - 0.01)


@given(st.integers(2, 60), st.floats(0.001, 0.999))
def test_branch_residuals(t, frac):
    p = OptParams(5, t)
    phi = p.phi_min * frac
    a, b = alpha_of_phi(p, phi), beta_of_phi(p, phi)
    assert abs(g_rho(t, a) - phi) <= 1e-12
    assert abs(g_rho(t, b) - phi) <= 1e-12
    assert 1 / (t + 1) <= a < 2 / (t + 1) < b <= 1


# --- L and F ------------------------------------------------------------------------------


@pytest.mark.parametrize("r, t", [(3, 4), (7, 13), (9, 3), (6, 37)])
def test_L_F_at_zero(r, t):
    p = OptParams(r, t)
    for a in range(1, r):
        b = r - a
        assert L_ab(p, a, b, 0.0) == pytest.approx(a / (t + 1) + b, rel=1e-12)
        assert L_ab(p, a, b, 0.0) > 1
        assert F_ab(p, a, b, 0.0) == pytest.approx(a * f_rho(t, 1 / (t + 1)), rel=1e-10)


def test_ab_validation():
    p = OptParams(7, 13)
    with pytest.raises(ValueError):
        L_ab(p, 7, 0, -0.01)
    with pytest.raises(ValueError):
        F_ab(p, 3, 3, -0.01)


@pytest.mark.parametrize("r, t", [(7, 13), (9, 5), (12, 30), (6, 40)])
def test_dF_equals_phi_dL(r, t):
    p = OptParams(r, t)
    eps = 1e-7
    for frac in (0.1, 0.3, 0.5, 0.8):
        phi = p.phi_min * frac
        dF = F_ab(p, r - 1, 1, phi + eps) - F_ab(p, r - 1, 1, phi - eps)
        dL = L_ab(p, r - 1, 1, phi + eps) - L_ab(p, r - 1, 1, phi - eps)
        assert dF / dL == pytest.approx(phi, rel=1e-5)


@pytest.mark.parametrize("r, t", [(7, 13), (9, 5), (12, 30), (3, 4)])
def test_dL_matches_central_differences(r, t):
    p = OptParams(r, t)
    h = 1e-6 * abs(p.phi_min)
    for frac in np.linspace(0.05, 0.95, 10):
        phi = p.phi_min * frac
        for a in range(1, r):
            fd = (L_ab(p, a, r - a, phi + h) - L_ab(p, a, r - a, phi - h)) / (2 * h)
            assert dL_dphi(p, a, r - a, phi) == pytest.approx(fd, rel=1e-5)


def test_dL_rejects_endpoints():
    p = OptParams(7, 13)
    with pytest.raises(ValueError):
        dL_dphi(p, 6, 1, 0.0)
    with pytest.raises(ValueError):
        dL_dphi(p, 6, 1, p.phi_min)


@pytest.mark.parametrize("r, t", [(7, 13), (9, 3), (10, 20), (12, 40)])
def test_F_difference_is_integral_of_phi_dL(r, t):
    p = OptParams(r, t)
    a, b = r - 1, 1
    phi1, phi2 = 0.7 * p.phi_min, 0.2 * p.phi_min
    integral, _ = quad(lambda x: x * dL_dphi(p, a, b, x), phi1, phi2, epsabs=1e-13, epsrel=1e-11)
    diff = F_ab(p, a, b, phi2) - F_ab(p, a, b, phi1)
    assert integral == pytest.approx(diff, abs=1e-6)


@pytest.mark.parametrize("r, t", [(7, 13), (9, 3), (8, 10), (12, 40), (6, 37)])
def test_L_convex_above_phi_star(r, t):
    p = OptParams(r, t)
    phis = np.linspace(p.phi_star, -1e-6, 2001)[1:-1]
    h = (phis[1] - phis[0])
    L = lambda x: L_ab(p, r - 1, 1, x)
    second = L(phis + h) - 2 * L(phis) + L(phis - h)
    assert np.all(second >= -1e-8)


@pytest.mark.parametrize("r, t", [(r, t) for r in range(6, 13) for t in range(3, 41) if is_legal(r, t)][::7])
def test_dL_nonpositive_below_phi_star(r, t):
    p = OptParams(r, t)
    phis = np.linspace(p.phi_min, p.phi_star, 102)[1:-1]
    assert np.all(dL_dphi(p, r - 1, 1, phis) <= 1e-10)


# --- roots and critical points --------------------------------------------------------------


def test_skew_roots_r7_t13():
    p = OptParams(7, 13)
    roots = find_skew_roots(p, 6, 1)
    assert roots
    sk = skew_point(p, 6, 1, roots[0])
    assert sk.value > turan_point(p).value


def test_no_skew_root_r7_t5():
    p = OptParams(7, 5)
    roots = find_skew_roots(p, 6, 1)
    assert not roots or skew_point(p, 6, 1, roots[0]).value < turan_point(p).value


@pytest.mark.parametrize("r, t", [(7, 12), (7, 13), (9, 3), (10, 25), (12, 40), (6, 37), (8, 4)])
def test_root_residuals_and_intervals(r, t):
    p = OptParams(r, t)
    for phi in find_skew_roots(p, r - 1, 1):
        sk = skew_point(p, r - 1, 1, phi)
        assert abs(g_rho(t, sk.alpha) - phi) <= 1e-12
        assert abs(g_rho(t, sk.beta) - phi) <= 1e-12
        assert abs((r - 1) * sk.alpha + sk.beta - 1) <= 1e-12
        assert 1 / (t + 1) <= sk.alpha < 2 / (t + 1) < sk.beta <= 1


def test_roots_sorted_descending():
    roots = find_skew_roots(OptParams(7, 12), 6, 1)
    assert len(roots) == 2 and roots[0] > roots[1]


def test_turan_point_examples():
    assert turan_point(OptParams(2, 2)).value == pytest.approx(0.25)
    assert turan_point(OptParams(7, 13)).value == pytest.approx(float(sp.Rational(6, 7) ** 13), rel=1e-14)
    assert turan_point(OptParams(7, 13)).value == pytest.approx(0.134800571924, abs=1e-12)
    for r in range(2, 10):
        for t in (2, 7, 19):
            tp = turan_point(OptParams(r, t))
            assert tp.value == pytest.approx((1 - 1 / r) ** t, rel=1e-14)
            assert tp.a + tp.b == r
            assert tp.phi == pytest.approx(g_rho(t, 1 / r))


def test_density_profile_validation():
    DensityProfile((0.5, 0.5))
    with pytest.raises(ValueError):
        DensityProfile((0.5, 0.6))
    with pytest.raises(ValueError):
        DensityProfile((1.5, -0.5))


# --- solve -------------------------------------------------------------------------------


def slsqp_max(r, t, starts=60, seed=0):
    """Independent optimum over the whole simplex by multistart SLSQP."""
    rng = np.random.default_rng(seed)
    fun = lambda x: -np.sum(x * (1 - x) ** t)
    cons = ({"type": "eq", "fun": lambda x: np.sum(x) - 1},)
    best = -np.inf
    for _ in range(starts):
        res = minimize(fun, rng.dirichlet(np.ones(r)), method="SLSQP", bounds=[(0, 1)] * r,
                       constraints=cons, options={"ftol": 1e-15, "maxiter": 500})
        best = max(best, -res.fun)
    return best


def test_solve_r7_t13_skew():
    res = solve(OptParams(7, 13))
    assert res.legal and res.winner.kind == "skew"
    assert res.winner.value == pytest.approx(slsqp_max(7, 13), abs=1e-9)


@pytest.mark.parametrize("t", [11, 12])
def test_solve_r7_skew_already_wins_at_11_and_12(t):
    # independent global optimisation agrees that the skew point beats Turan here
    res = solve(OptParams(7, t))
    best = slsqp_max(7, t)
    assert res.winner.kind == "skew"
    assert res.winner.value == pytest.approx(best, abs=1e-9)
    assert best > res.turan.value + 1e-3


@pytest.mark.parametrize("t", [5, 7, 10])
def test_solve_r7_turan_for_small_t(t):
    res = solve(OptParams(7, t))
    assert res.winner.kind == "turan"
    assert res.winner.value == pytest.approx(slsqp_max(7, t), abs=1e-9)


def test_solve_r9_t3_dominates_turan():
    res = solve(OptParams(9, 3))
    assert res.winner.value >= (8 / 9) ** 3 - 1e-15
    assert (res.winner.kind == "turan") == (res.winner.value == res.turan.value)


def test_solve_non_legal_is_flagged():
    res = solve(OptParams(2, 2))
    assert res.legal is False
    assert res.winner.kind == "turan"
    assert res.to_dict() == {"r": 2, "t": 2, "legal": False, "turan": {"value": 0.25},
                             "skew": None, "winner": "turan"}


@pytest.mark.parametrize("r, t", [(6, 37), (7, 13), (9, 3), (12, 40), (8, 20)])
def test_winner_is_kkt_point(r, t):
    res = solve(OptParams(r, t))
    prof = res.winner.profile()
    assert abs(math.fsum(prof.rho) - 1) <= 1e-12
    gs = [g_rho(t, x) for x in prof.rho]
    assert max(gs) - min(gs) <= 1e-10
    assert prof.value(t) == pytest.approx(res.winner.value, rel=1e-12)
    assert res.winner.value >= res.turan.value
    if res.winner.kind == "skew":
        assert res.winner.value > res.turan.value


@pytest.mark.parametrize("r, t", [(6, 37), (6, 40), (7, 12), (7, 20), (9, 3), (9, 4), (11, 33)])
def test_grid_oracle_agreement(r, t):
    res = solve(OptParams(r, t))
    grid, _ = grid_search_skew(r, t)
    assert abs(grid - res.winner.value) <= 1e-8


def test_root_beyond_float_range_is_degenerate():
    # for r=6, t=400 the skew root has |phi| far below the smallest double
    res = solve(OptParams(6, 400))
    assert res.skew.phi == TAIL_END and res.skew.degenerate
    assert res.skew.value == grid_search_skew(6, 400)[0]
    assert res.winner.kind == "skew"


def test_tiny_phi_root_is_resolved():
    p = OptParams(6, 37)
    roots = find_skew_roots(p, 5, 1)
    assert roots and -1e-12 < roots[0] < 0
    sk = skew_point(p, 5, 1, roots[0])
    assert abs(5 * sk.alpha + sk.beta - 1) <= 1e-12


def test_moving_a_part_to_alpha_never_hurts_sample():
    for r, t in [(7, 13), (8, 10), (9, 8), (10, 30), (12, 40)]:
        p = OptParams(r, t)
        best = {}
        for a in range(1, r):
            roots = find_skew_roots(p, a, r - a)
            if roots:
                best[a] = F_ab(p, a, r - a, roots[0])
        for a in best:
            if a + 1 in best:
                assert best[a + 1] >= best[a] - 1e-12


# --- boundary exclusion ------------------------------------------------------------------


@pytest.mark.parametrize("t", [2, 5, 13])
def test_halving_beats_boundary_profiles(t):
    rng = np.random.default_rng(1234 + t)
    count, r = 10_000, 7
    rho = rng.dirichlet(np.ones(r), size=count)
    zeros = rng.integers(1, r, size=count)
    for i, z in enumerate(zeros):
        rho[i, :z] = 0.0
    rho /= rho.sum(axis=1, keepdims=True)
    last = rho[:, -1]
    moved = rho.copy()
    moved[:, 0] = last / 2
    moved[:, -1] = last / 2
    F = lambda x: np.sum(x * (1 - x) ** t, axis=1)
    assert np.all(F(moved) > F(rho))


# --- legal pairs -------------------------------------------------------------------------------


def test_is_legal_examples():
    assert is_legal(6, 37) and not is_legal(6, 36)
    assert is_legal(9, 3)
    assert not is_legal(5, 1000)
    assert is_legal(8, 4) and not is_legal(8, 3)
    assert is_legal(7, 5) and not is_legal(7, 4)
    assert not is_legal(20, 2)


def test_monotone_inequality_examples():
    assert monotone_inequality_holds(9, 3)
    assert (1 + (1 + 6 / 8) / 1) ** 2 == 7.5625
    assert not monotone_inequality_holds(6, 36)
    assert monotone_inequality_holds(6, 37)
    with pytest.raises(ValueError):
        monotone_inequality_holds(6, 2)


@pytest.mark.parametrize("r", range(6, 15))
def test_monotone_inequality_limit(r):
    base = 1 + (r - 3) / (r - 1)
    limit = math.exp(base)
    t = 10**7
    assert (1 + base / (t - 2)) ** (t - 1) == pytest.approx(limit, rel=1e-5)
    assert limit <= r - 1


# --- scans and formatting -------------------------------------------------------------------


def test_scan_single_row_and_csv():
    rows = crossover_scan(9, 3, 3)
    assert len(rows) == 1
    text = scan_csv(rows)
    lines = text.split("\n")
    assert lines[0] == SCAN_HEADER
    assert text.endswith("\n") and "\r" not in text
    assert lines[1].split(",")[0] == "3"
    assert lines[1].endswith(",true")


def test_scan_r7():
    rows = crossover_scan(7, 5, 13)
    assert [r.t for r in rows] == list(range(5, 14))
    assert [r.winner for r in rows] == ["turan"] * 6 + ["skew"] * 3
    csv_rows = scan_csv(rows).strip().split("\n")[1:]
    assert csv_rows[0].split(",")[3:7] == ["", "", "", ""]


def test_scan_legal_column_flip():
    rows = crossover_scan(6, 30, 40)
    assert [r.legal for r in rows] == [t >= 37 for t in range(30, 41)]


def test_fmt_float():
    assert fmt_float(1.0) == "1.0"
    assert fmt_float(0.1) == "0.10000000000000001"
    assert float(fmt_float(math.pi)) == math.pi
    assert fmt_float(-1e-300) == "-1e-300"
    assert fmt_float(2.0 / 3.0) == "0.66666666666666663"


def test_critical_point_profile():
    cp = CriticalPoint("skew", 2, 1, 0.25, 0.5, -0.1, 0.0)
    assert cp.profile().rho == (0.25, 0.25, 0.5)
