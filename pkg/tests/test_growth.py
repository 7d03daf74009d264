import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from growthpricer import (
    DomainError,
    Game,
    LinearTilted,
    Regime,
    eta,
    growth,
    growth_cap,
    kelly_binary,
    optimal_proportion,
    pre_optimal,
    u_max,
    w,
)
from growthpricer.growth import leverage_bound

from conftest import atoms
from oracles import atom_growth, atom_w, golden_max, two_atom_root, uniform_growth

GAME_NAMES = ["game1", "game2", "samuelson", "uniform", "tilted", "stpete", "lognormal", "put", "neg_atoms"]


@pytest.fixture(scope="module")
def corner():
    """xi = 0 with finite H: density 2x on [0, 1]."""
    return Game(LinearTilted(0.0, 1.0, 0.0))


def interior_range(g):
    s = g.stats
    lo = max(0.0, s.xi_plus_invHxi)
    if g.xi >= 0:
        lo = max(lo, s.invH)
    hi = s.E if math.isfinite(s.E) else lo + 20.0
    return lo, hi


def interior_u(g, lam):
    lo, hi = interior_range(g)
    return lo + lam * (hi - lo)


# -- w and the pre-optimal proportion ---------------------------------------


def test_w_roots(game1, game2):
    assert abs(w(game1, 1.0, 0.25)) < 1e-14
    assert abs(w(game2, 1.0, 5 / 6)) < 1e-14


def test_w_near_zero(game1):
    assert w(game1, 1.0, 1e-9) == pytest.approx(0.5, abs=1e-6)


def test_w_domain(game1, tilted):
    with pytest.raises(DomainError):
        w(game1, 1.0, 1.0)
    with pytest.raises(DomainError):
        w(tilted, 0.5, 0.5)  # bound is 1/3
    with pytest.raises(DomainError):
        w(game1, 0.0, 0.1)


def test_w_matches_direct_sum(samuelson):
    pairs = [(2.7, 0.5), (0.3, 0.5)]
    for u, t in [(1.0, 0.3), (1.3, 0.1), (2.0, 0.05)]:
        assert w(samuelson, u, t) == pytest.approx(atom_w(pairs, u, t), abs=1e-15)


def test_pre_optimal_two_atom_closed_form(game1):
    # (3 - 2u) / (2 (3 - u)) at u = 1.25 is 1/7
    assert pre_optimal(game1, 1.25) == pytest.approx(two_atom_root(3, 0, 0.5, 1.25), abs=1e-12)
    assert pre_optimal(game1, 1.25) == pytest.approx(1 / 7, abs=1e-12)


def test_pre_optimal_samuelson(samuelson):
    assert pre_optimal(samuelson, 1.0) == pytest.approx(50 / 119, abs=1e-12)


@pytest.mark.parametrize("y", np.linspace(0.1, 3.0, 13))
def test_uniform_closed_form(uniform, y):
    t = (math.exp(y) - y - 1) / (math.exp(y) - 1)
    u = t / y
    assert pre_optimal(uniform, u) == pytest.approx(t, abs=1e-8)


def test_pre_optimal_domain(game2):
    with pytest.raises(DomainError):
        pre_optimal(game2, 0.5)  # below 1/H, full investment territory
    with pytest.raises(DomainError):
        pre_optimal(game2, 1.4)


# -- optimal proportion and growth --------------------------------------------


def test_zero_invest(game1):
    r = optimal_proportion(game1, 2.0)
    assert (r.t, r.regime, r.growth) == (0.0, Regime.ZERO_INVEST, 1.0)


def test_full_invest_stpete(stpete):
    r = optimal_proportion(stpete, 3.0)
    assert r.regime is Regime.FULL_INVEST and r.t == 1.0
    assert r.growth == pytest.approx(4 / 3, abs=1e-8)


def test_boundary_leverage_tilted(tilted):
    r = optimal_proportion(tilted, 0.5)
    assert r.regime is Regime.BOUNDARY_LEVERAGE
    assert r.t == pytest.approx(1 / 3, abs=1e-14)
    assert r.growth == pytest.approx(2 * math.exp(-0.5), abs=1e-8)


def test_boundary_growth_matches_limit(tilted):
    u = 0.5
    bound = leverage_bound(tilted, u)
    assert growth(tilted, u, bound * (1 - 1e-9)) == pytest.approx(growth(tilted, u, bound), abs=1e-6)


def test_growth_values(game1, game2):
    assert growth(game1, 1.0, 0.25) == pytest.approx(math.sqrt(9 / 8), abs=1e-12)
    assert growth(game2, 1.0, 5 / 6) == pytest.approx(math.sqrt(121 / 96), abs=1e-12)
    assert growth(game1, 1.0, 0.0) == 1.0


def test_growth_rejects_over_leverage(tilted):
    with pytest.raises(DomainError):
        growth(tilted, 0.5, 0.5)


def test_growth_uniform_against_quadpack(uniform):
    for u, t in [(0.3, 0.5), (0.45, 0.2), (0.2, 0.99)]:
        assert growth(uniform, u, t) == pytest.approx(uniform_growth(u, t), rel=1e-11)


def test_kelly_examples():
    t, G = kelly_binary(2.7, 0.3, 0.5)
    assert t == pytest.approx(50 / 119, abs=1e-15)
    assert G == pytest.approx(1.1000, abs=5e-4)
    t, G = kelly_binary(3.0, 0.0, 0.5)
    assert t == pytest.approx(0.25) and G == pytest.approx(math.sqrt(9 / 8), abs=1e-12)
    t, G = kelly_binary(2.0, 0.625, 0.5)
    assert t == pytest.approx(5 / 6) and G == pytest.approx(math.sqrt(121 / 96), abs=1e-12)


def test_kelly_domain():
    with pytest.raises(DomainError):
        kelly_binary(0.9, 0.3, 0.5)
    with pytest.raises(DomainError):
        kelly_binary(1.1, 0.1, 0.2)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(1.2, 6.0), b=st.floats(0.0, 0.9), p=st.floats(0.1, 0.9))
def test_kelly_agrees_with_optimizer(a, b, p):
    q = 1 - p
    if not (p * a + q * b > 1.001) or (b > 0 and 1 / (p / a + q / b) > 0.999):
        return
    g = atoms((a, p), (b, q))
    t, G = kelly_binary(a, b, p)
    r = optimal_proportion(g, 1.0)
    assert r.t == pytest.approx(t, abs=1e-10)
    assert r.growth == pytest.approx(G, abs=1e-10)


def test_eta_quadratic(neg_atoms, tilted):
    assert eta(neg_atoms) == pytest.approx(0.75, abs=1e-10)
    assert growth_cap(neg_atoms) == pytest.approx(1.25, abs=1e-10)
    assert eta(tilted) == 1.0


def test_eta_domain(game1):
    with pytest.raises(DomainError):
        eta(game1)


def test_u_max_is_diagnostic(tilted):
    um = u_max(tilted)
    t_peak = optimal_proportion(tilted, um).t
    for u in (0.3, 0.9):
        assert optimal_proportion(tilted, u).t <= t_peak + 1e-9


# -- property suites ------------------------------------------------------


@pytest.mark.parametrize("name", GAME_NAMES)
@settings(max_examples=8, deadline=None)
@given(lam=st.floats(0.05, 0.95))
def test_w_strictly_decreasing(name, lam, request):
    g = request.getfixturevalue(name)
    lo, hi = max(0.0, g.xi) + 1e-3, (g.stats.E if math.isfinite(g.stats.E) else 30.0)
    u = lo + lam * (hi - lo)
    bound = leverage_bound(g, u)
    top = min(bound, 50.0)
    ts = np.linspace(top * 1e-3, top * (1 - 1e-3), 25)
    ws = [w(g, u, t) for t in ts]
    assert all(a > b for a, b in zip(ws, ws[1:]))


@pytest.mark.parametrize("name", ["game1", "game2", "uniform", "lognormal", "put", "samuelson"])
def test_w_limit_at_zero(name, request):
    g = request.getfixturevalue(name)
    u = interior_u(g, 0.5)
    assert w(g, u, 1e-8 * leverage_bound(g, u)) == pytest.approx(g.stats.E / u - 1, abs=1e-6)


@pytest.mark.parametrize("u", [0.6, 0.8, 0.95])
def test_w_limit_at_bound(tilted, u):
    s = tilted.stats
    xi = tilted.xi
    bound = leverage_bound(tilted, u)
    limit = (1 - xi / u) * s.H_xi * (s.xi_plus_invHxi - u)
    assert w(tilted, u, bound - 1e-8) == pytest.approx(limit, abs=1e-6)


@pytest.mark.parametrize("name", GAME_NAMES)
@settings(max_examples=6, deadline=None)
@given(lam=st.floats(0.02, 0.98), frac=st.floats(0.01, 0.99))
def test_jensen_bound(name, lam, frac, request):
    g = request.getfixturevalue(name)
    u = interior_u(g, lam)
    t = frac * min(leverage_bound(g, u), 5.0)
    G = growth(g, u, t)
    if math.isfinite(g.stats.E):
        assert G < g.stats.E / u


@pytest.mark.parametrize("name", GAME_NAMES)
@settings(max_examples=5, deadline=None)
@given(lam=st.floats(0.05, 0.95))
def test_optimality_against_golden_section(name, lam, request):
    g = request.getfixturevalue(name)
    u = interior_u(g, lam)
    r = optimal_proportion(g, u)
    assert r.regime is Regime.INTERIOR_ROOT
    assert r.growth > 1.0
    top = min(leverage_bound(g, u), 5.0) * (1 - 1e-9)
    t_ref, G_ref = golden_max(lambda t: growth(g, u, t), 0.0, top)
    assert r.growth >= G_ref - 1e-12
    assert r.t == pytest.approx(t_ref, abs=1e-4)
    for t in np.linspace(0, top, 21):
        if abs(t - r.t) > 1e-3:
            assert growth(g, u, t) < r.growth


@pytest.mark.parametrize("name", GAME_NAMES)
def test_log_growth_concave(name, request):
    g = request.getfixturevalue(name)
    u = interior_u(g, 0.4)
    top = min(leverage_bound(g, u), 5.0)
    ts = np.linspace(0, top * 0.98, 31)
    logs = np.log([growth(g, u, t) for t in ts])
    assert np.all(np.diff(logs, 2) <= 1e-11)


@pytest.mark.parametrize("name", GAME_NAMES)
def test_t_over_u_decreasing(name, request):
    g = request.getfixturevalue(name)
    us = [interior_u(g, lam) for lam in np.linspace(0.05, 0.95, 12)]
    ratios = [optimal_proportion(g, u).t / u for u in us]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("name", ["game1", "game2", "samuelson", "uniform", "stpete", "lognormal", "put"])
def test_t_decreasing_for_nonnegative_xi(name, request):
    g = request.getfixturevalue(name)
    us = [interior_u(g, lam) for lam in np.linspace(0.05, 0.95, 12)]
    ts = [optimal_proportion(g, u).t for u in us]
    assert all(a > b for a, b in zip(ts, ts[1:]))


@pytest.mark.parametrize("name", ["tilted", "neg_atoms"])
def test_t_unimodal_for_negative_xi(name, request):
    g = request.getfixturevalue(name)
    E = g.stats.E
    us = np.linspace(0.01 * E, 0.99 * E, 40)
    ts = np.array([optimal_proportion(g, u).t for u in us])
    signs = np.sign(np.diff(ts))
    signs = signs[signs != 0]
    # increasing then decreasing: at most one sign change, from + to -
    changes = np.flatnonzero(np.diff(signs))
    assert len(changes) <= 1
    assert signs[-1] < 0
    if len(changes) == 1:
        assert signs[0] > 0


@pytest.mark.parametrize("name", ["game1", "game2", "samuelson", "uniform", "tilted", "neg_atoms"])
def test_integral_identity(name, request):
    g = request.getfixturevalue(name)
    E = g.stats.E
    for lam in (0.3, 0.7):
        u = interior_u(g, lam)
        integral, _ = sp_integrate.quad(
            lambda s: optimal_proportion(g, s).t / s, u, E, epsabs=1e-10, epsrel=1e-10, limit=200
        )
        assert optimal_proportion(g, u).growth == pytest.approx(math.exp(integral), abs=1e-6)


def test_integral_identity_infinite_expectation(stpete):
    # cut the outer integral where t/s has fallen below 1e-10
    u = 5.0
    cutoff = u
    while optimal_proportion(stpete, cutoff).t / cutoff > 1e-10:
        cutoff *= 4
    pts = np.geomspace(u, cutoff, 40)
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        total += sp_integrate.quad(lambda s: optimal_proportion(stpete, s).t / s, a, b, epsabs=1e-12, epsrel=1e-10)[0]
    assert optimal_proportion(stpete, u).growth == pytest.approx(math.exp(total), abs=1e-6)


def test_boundary_continuity_positive_xi(game2):
    s = game2.stats
    limit = s.H * math.exp(game2.log_mean)
    for u in (s.invH * (1 - 1e-6), s.invH * (1 + 1e-6)):
        assert optimal_proportion(game2, u).growth == pytest.approx(limit, abs=1e-5)


def test_boundary_continuity_zero_xi(corner):
    s = corner.stats
    assert corner.xi == 0 and math.isfinite(s.H)
    limit = s.H * math.exp(corner.log_mean)
    below = optimal_proportion(corner, s.invH * (1 - 1e-6))
    above = optimal_proportion(corner, s.invH * (1 + 1e-6))
    assert below.regime is Regime.FULL_INVEST and above.regime is Regime.INTERIOR_ROOT
    assert below.growth == pytest.approx(limit, abs=1e-5)
    assert above.growth == pytest.approx(limit, abs=1e-5)


def test_regime_continuity_negative_xi(tilted):
    edge = tilted.stats.xi_plus_invHxi
    a = optimal_proportion(tilted, edge * (1 - 1e-7))
    b = optimal_proportion(tilted, edge * (1 + 1e-7))
    assert a.regime is Regime.BOUNDARY_LEVERAGE and b.regime is Regime.INTERIOR_ROOT
    assert a.t == pytest.approx(b.t, abs=1e-5)
    assert a.growth == pytest.approx(b.growth, abs=1e-6)


@pytest.mark.parametrize("name", GAME_NAMES)
def test_optimal_growth_decreasing_in_u(name, request):
    g = request.getfixturevalue(name)
    E = g.stats.E
    # with E infinite the optimal growth exceeds 1 by less than machine epsilon beyond u ~ 40
    hi = E if math.isfinite(E) else 25.0
    us = np.linspace(0.02 * hi, 0.999 * hi, 30)
    Gs = [optimal_proportion(g, u).growth for u in us]
    assert all(a > b for a, b in zip(Gs, Gs[1:]))


def test_discrete_growth_matches_direct_sum(samuelson):
    pairs = [(2.7, 0.5), (0.3, 0.5)]
    assert growth(samuelson, 1.2, 0.3) == pytest.approx(atom_growth(pairs, 1.2, 0.3), rel=1e-14)
