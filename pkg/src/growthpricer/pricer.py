"""Growth-rate pricing: solve ``max_t G_u(t) = target`` for the price ``u``.

The maximised growth is continuous and strictly decreasing in ``u`` on
``(0, E)``, so the price is found by bracketing and a bracketed root search.
Where the optimum sits in a closed-form regime (full investment, or the
leverage boundary for ``xi < 0``) the price is solved exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from scipy import optimize

from .errors import (
    DomainError,
    IneffectiveGame,
    InfiniteExpectation,
    RootFindingFailure,
    TargetOutOfRange,
)
from .growth import GrowthCurvePoint, Regime, growth_cap, optimal_proportion
from .measures import Game, effectiveness
from .quadrature import QuadratureConfig


class Compounding(str, enum.Enum):
    SIMPLE = "simple"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class PriceResult:
    price: float
    proportion: float
    growth_at_price: float
    rate: float
    compounding: Compounding
    target: float
    bracket: tuple
    regime: Regime
    horizon: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "price": self.price,
            "proportion": self.proportion,
            "growth_at_price": self.growth_at_price,
            "rate": self.rate,
            "compounding": self.compounding.value,
            "horizon": self.horizon,
            "target": self.target,
            "regime": self.regime.value,
            "bracket": list(self.bracket),
        }


def growth_target(rate: float, compounding="simple", horizon: Optional[float] = None) -> float:
    """``1 + r`` (simple), ``e^r`` (continuous) or ``e^{rT}`` (continuous with horizon)."""
    if not rate > 0:
        raise DomainError(f"the riskless rate must be positive, got {rate}")
    comp = Compounding(compounding)
    if comp is Compounding.SIMPLE:
        if horizon is not None:
            raise DomainError("a horizon is only supported with continuous compounding")
        return 1.0 + rate
    if horizon is None:
        return math.exp(rate)
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    return math.exp(rate * horizon)


def _optimal_growth(g, u, cfg):
    return optimal_proportion(g, u, cfg).growth


def _bracket(g: Game, target: float, cfg, start: float):
    """Return ``(lo, hi)`` with growth(lo) > target > growth(hi)."""
    E = g.stats.E
    if math.isfinite(E):
        hi = E
    else:
        hi = start
        for _ in range(200):
            if _optimal_growth(g, hi, cfg) < target:
                break
            hi *= 2.0
        else:
            raise RootFindingFailure("could not find an upper price bracket")
    lo = start if start < hi else 0.5 * hi
    for _ in range(400):
        if _optimal_growth(g, lo, cfg) > target:
            return lo, hi
        hi_candidate = lo
        lo *= 0.5
        hi = min(hi, hi_candidate)
    raise TargetOutOfRange(f"no price below {lo:.3g} attains target {target}")


def price(
    g: Game,
    rate: float,
    compounding="simple",
    horizon: Optional[float] = None,
    cfg: QuadratureConfig | None = None,
) -> PriceResult:
    """Price ``g`` so that its maximised growth equals the riskless growth.

    Raises:
        IneffectiveGame: when the game's effectiveness test fails.
        TargetOutOfRange: for ``xi < 0`` when the target reaches the growth
            supremum (reported as ``exc.cap``).
    """
    target = growth_target(rate, compounding, horizon)
    comp = Compounding(compounding)
    if effectiveness(g).status == "no":
        raise IneffectiveGame("the game is not effective; its growth-rate price is undefined")
    st = g.stats
    xi = g.xi

    def result(u, bracket):
        opt = optimal_proportion(g, u, cfg)
        return PriceResult(u, opt.t, opt.growth, rate, comp, target, bracket, opt.regime, horizon)

    start = 1.0
    if xi >= 0 and st.invH > 0:
        edge = st.invH
        edge_growth = math.exp(g.log_mean) / edge
        if target >= edge_growth:
            u = math.exp(g.log_mean) / target
            return result(u, (u, u))
        start = edge
    elif xi < 0:
        cap = growth_cap(g, cfg)
        if target >= cap:
            raise TargetOutOfRange(f"target {target} is not below the growth supremum {cap}", cap=cap)
        if st.xi_plus_invHxi > 0:
            edge = st.xi_plus_invHxi
            if target >= math.exp(g.log_shift_mean) / (edge - xi):
                u = math.exp(g.log_shift_mean) / target + xi
                return result(u, (u, u))
            start = edge
    elif math.isfinite(st.E):
        start = 0.5 * st.E

    lo, hi = _bracket(g, target, cfg, start)
    u = optimize.brentq(
        lambda v: _optimal_growth(g, v, cfg) - target, lo, hi, xtol=1e-14 * max(1.0, hi), rtol=1e-14
    )
    return result(u, (lo, hi))


def expectation_price(
    g: Game,
    rate: float,
    compounding="simple",
    horizon: Optional[float] = None,
    cfg: QuadratureConfig | None = None,
) -> PriceResult:
    """Price from ``E / u = target``, with the optimal proportion at that price."""
    target = growth_target(rate, compounding, horizon)
    E = g.stats.E
    if not math.isfinite(E):
        raise InfiniteExpectation("E is infinite, so E/u = target has no solution")
    u = E / target
    opt = optimal_proportion(g, u, cfg)
    return PriceResult(u, opt.t, opt.growth, rate, Compounding(compounding), target, (u, u), opt.regime, horizon)


def pricing_curve(g: Game, u_grid: Iterable[float], cfg: QuadratureConfig | None = None) -> list:
    points = []
    for u in u_grid:
        opt = optimal_proportion(g, float(u), cfg)
        points.append(GrowthCurvePoint(opt.u, opt.t, opt.growth))
    return points
