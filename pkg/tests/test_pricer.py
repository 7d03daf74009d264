import math

import numpy as np
import pytest

from growthpricer import (
    DomainError,
    Game,
    GeometricLadder,
    IneffectiveGame,
    InfiniteExpectation,
    Regime,
    TargetOutOfRange,
    expectation_price,
    growth,
    growth_target,
    optimal_proportion,
    price,
    pricing_curve,
)

TOL = 5e-4
CORPUS = ["game1", "game2", "samuelson", "uniform", "tilted", "stpete", "lognormal", "put", "neg_atoms"]


def test_targets():
    assert growth_target(0.04) == pytest.approx(1.04)
    assert growth_target(0.04, "continuous") == pytest.approx(math.exp(0.04))
    assert growth_target(0.04, "continuous", 2.0) == pytest.approx(math.exp(0.08))
    with pytest.raises(DomainError):
        growth_target(0.04, "simple", 2.0)
    with pytest.raises(DomainError):
        growth_target(0.0)
    with pytest.raises(ValueError):
        growth_target(0.04, "weekly")


def test_stpete_price(stpete, expected):
    r = price(stpete, 0.04)
    assert r.price == pytest.approx(expected["stpetersburg"]["price"], abs=1e-3)
    assert r.proportion == pytest.approx(expected["stpetersburg"]["proportion"], abs=1e-3)
    with pytest.raises(InfiniteExpectation):
        expectation_price(stpete, 0.04)


def test_uniform_prices(uniform, expected):
    e = expected["uniform"]
    r = price(uniform, 0.04)
    assert r.price == pytest.approx(e["price"], abs=TOL)
    assert r.proportion == pytest.approx(e["proportion"], abs=TOL)
    x = expectation_price(uniform, 0.04)
    assert x.price == pytest.approx(e["expectation_price"], abs=TOL)
    assert x.growth_at_price == pytest.approx(e["expectation_growth"], abs=TOL)


def test_samuelson_prices(samuelson, expected):
    e = expected["samuelson"]
    r = price(samuelson, 0.04)
    assert r.price == pytest.approx(e["price"], abs=TOL)
    assert r.proportion == pytest.approx(e["proportion"], abs=TOL)
    x = expectation_price(samuelson, 0.04)
    assert x.price == pytest.approx(e["expectation_price"], abs=TOL)
    assert x.proportion == pytest.approx(e["expectation_proportion"], abs=TOL)


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(name, request):
    g = request.getfixturevalue(name)
    r = price(g, 0.04)
    assert 0 < r.price < g.stats.E
    assert growth(g, r.price, r.proportion) == pytest.approx(r.target, abs=1e-8)
    assert r.growth_at_price == pytest.approx(r.target, abs=1e-8)


@pytest.mark.parametrize("name", CORPUS)
def test_antitone_in_rate(name, request):
    g = request.getfixturevalue(name)
    prices = [price(g, r).price for r in (0.01, 0.03, 0.05, 0.08)]
    assert all(a > b for a, b in zip(prices, prices[1:]))


@pytest.mark.parametrize("name", ["game1", "game2", "samuelson", "uniform", "lognormal", "put"])
def test_expectation_price_above_growth_price(name, request):
    g = request.getfixturevalue(name)
    assert expectation_price(g, 0.04).price > price(g, 0.04).price


def test_closed_form_regimes():
    # high rates push the price into full investment (xi >= 0) territory
    g = Game(GeometricLadder(2.0))
    r = price(g, 0.5)
    assert r.regime is Regime.FULL_INVEST
    assert growth(g, r.price, 1.0) == pytest.approx(1.5, abs=1e-10)


def test_boundary_leverage_price(tilted):
    target = 2 * math.exp(-0.5)
    r = price(tilted, target - 1)
    assert r.regime is Regime.BOUNDARY_LEVERAGE
    assert r.price == pytest.approx(0.5, abs=1e-10)


def test_cap_exceeded(neg_atoms):
    with pytest.raises(TargetOutOfRange) as info:
        price(neg_atoms, 0.3)
    assert info.value.cap == pytest.approx(1.25, abs=1e-10)


def test_ineffective_game():
    with pytest.raises(IneffectiveGame):
        price(Game(GeometricLadder(16.0)), 0.04)  # 16**0.25 = 2, so no grid exponent converges


def test_pricing_curve(game1, stpete):
    pts = pricing_curve(game1, [1.0, 1.0879945137, 1.25, 1.5])
    assert pts[0].G == pytest.approx(math.sqrt(9 / 8), abs=1e-12)
    assert pts[1].G == pytest.approx(1.04, abs=1e-9)
    # t = 1/7 at u = 1.25 gives sqrt(36/35)
    assert pts[2].t_u == pytest.approx(1 / 7, abs=1e-12)
    assert pts[2].G == pytest.approx(math.sqrt(36 / 35), abs=1e-12)
    assert pts[3].G == 1.0
    assert pricing_curve(stpete, [3.0])[0].G == pytest.approx(4 / 3, abs=1e-8)


@pytest.mark.parametrize("name", CORPUS)
def test_curve_strictly_decreasing(name, request):
    g = request.getfixturevalue(name)
    E = g.stats.E
    hi = E if math.isfinite(E) else 25.0
    pts = pricing_curve(g, np.linspace(0.05 * hi, 0.99 * hi, 15))
    assert all(a.G > b.G for a, b in zip(pts, pts[1:]))
