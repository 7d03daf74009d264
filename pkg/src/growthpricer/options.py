"""Lognormal stock and European put games, plus the Black-Scholes put.

The stock driver is ``x ~ N(-sigma^2 T / 2, sigma^2 T)`` so that the
forward ``S e^{rT} e^x`` has mean ``S e^{rT}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, MalformedSpec
from .measures import Exponential, Game, NormalTransform, PutPayoff


@dataclass(frozen=True)
class MarketParams:
    S: float
    K: float
    T: float
    sigma: float
    r: float

    def __post_init__(self):
        for name in ("S", "K", "T", "sigma", "r"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"market parameter {name} must be finite and positive, got {v!r}")

    @property
    def forward(self) -> float:
        return self.S * math.exp(self.r * self.T)

    @property
    def growth_target(self) -> float:
        """Riskless growth over the exercise period, ``e^{rT}``."""
        return math.exp(self.r * self.T)


def market_params_from_spec(spec: dict) -> MarketParams:
    try:
        return MarketParams(
            float(spec["S"]), float(spec["K"]), float(spec["T"]), float(spec["sigma"]), float(spec["r"])
        )
    except KeyError as exc:
        raise MalformedSpec(f"put spec is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise MalformedSpec("put spec fields must be numeric") from exc


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def lognormal_game(S: float, sigma: float, r: float) -> Game:
    """One-period stock game ``a(x) = S e^r e^x``, ``x ~ N(-sigma^2/2, sigma^2)``."""
    if not (S > 0 and sigma > 0 and r > 0):
        raise DomainError("lognormal game needs S, sigma, r > 0")
    return Game(NormalTransform(-0.5 * sigma * sigma, sigma), Exponential(S * math.exp(r)))


def put_game(mp: MarketParams) -> Game:
    """European put payoff ``max(K - S e^{rT} e^x, 0)`` over one exercise period."""
    vol = mp.sigma * math.sqrt(mp.T)
    return Game(NormalTransform(-0.5 * vol * vol, vol), PutPayoff(mp.K, mp.forward))


def _d_args(mp: MarketParams):
    vol = mp.sigma * math.sqrt(mp.T)
    base = math.log(mp.S / mp.K)
    d2 = (base + (mp.r - 0.5 * mp.sigma ** 2) * mp.T) / vol
    d1 = (base + (mp.r + 0.5 * mp.sigma ** 2) * mp.T) / vol
    return d1, d2


def put_expectation(mp: MarketParams) -> float:
    """Closed-form expected put payoff ``K N(-d2) - S e^{rT} N(-d1)``."""
    d1, d2 = _d_args(mp)
    return mp.K * normal_cdf(-d2) - mp.forward * normal_cdf(-d1)


def black_scholes_put(mp: MarketParams) -> float:
    d1, d2 = _d_args(mp)
    return mp.K * math.exp(-mp.r * mp.T) * normal_cdf(-d2) - mp.S * normal_cdf(-d1)
