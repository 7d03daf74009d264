"""Optimal proportion of investment and the limit expectation of growth rate.

For a game with profit ``a`` and price ``u``, staking a fraction ``t`` of
capital multiplies it by ``a t / u - t + 1`` per attempt. The long-run
growth factor is

    G_u(t) = exp( integral of log(a t / u - t + 1) dF ),

and its maximiser over admissible ``t`` falls into one of four regimes
(see :class:`Regime`). Inside the interior regime the maximiser is the
unique root of the first-order integral :func:`w`, which is strictly
decreasing in ``t``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, RootFindingFailure
from .measures import Game, integrate
from .quadrature import QuadratureConfig

TIE_SLACK = 1e-12


class Regime(str, enum.Enum):
    ZERO_INVEST = "ZeroInvest"
    FULL_INVEST = "FullInvest"
    BOUNDARY_LEVERAGE = "BoundaryLeverage"
    INTERIOR_ROOT = "InteriorRoot"


@dataclass(frozen=True)
class ProportionResult:
    u: float
    t: float
    regime: Regime
    growth: float


@dataclass(frozen=True)
class GrowthCurvePoint:
    u: float
    t_u: float
    G: float


def leverage_bound(g: Game, u: float) -> float:
    """Largest admissible proportion ``u / (u - xi)`` (``inf`` when ``u <= xi``)."""
    return math.inf if u <= g.xi else u / (u - g.xi)


def _excess_form(g: Game, u: float, t: float):
    """Return ``(gap, level)`` so that ``a t - u t + u = e t + gap`` and ``a - u = e - level``.

    Here ``e = a - xi`` is supplied exactly by :func:`integrate` with
    ``shifted=True``; this keeps the stake accurate near the leverage bound.
    """
    xi = g.xi
    if u <= xi:
        return xi * t + u * (1.0 - t), u - xi
    return (u - xi) * (u / (u - xi) - t), u - xi


def w(g: Game, u: float, t: float, cfg: QuadratureConfig | None = None) -> float:
    """First-order integral ``integral of (a - u) / (a t - u t + u) dF``."""
    if not u > max(0.0, g.xi):
        raise DomainError(f"w needs u > max(0, xi) = {max(0.0, g.xi)}, got u={u}")
    bound = leverage_bound(g, u)
    if not 0 < t < bound:
        raise DomainError(f"w needs 0 < t < {bound}, got t={t}")
    gap, level = _excess_form(g, u, t)
    return integrate(g, lambda e: (e - level) / (e * t + gap), cfg, shifted=True)


def pre_optimal(g: Game, u: float, cfg: QuadratureConfig | None = None) -> float:
    """Root of ``w(g, u, .)`` on ``(0, u/(u - xi))``.

    Valid for ``max(0, xi + 1/H_xi) < u < E``. If the bracket's right end
    still has ``w > 0`` after shrinking the offset to 1e-15 (the root is
    numerically on the boundary), the near-boundary point is returned.
    """
    st = g.stats
    lo_u = max(0.0, st.xi_plus_invHxi)
    if not lo_u < u < st.E:
        raise DomainError(f"pre-optimal proportion needs {lo_u} < u < {st.E}, got u={u}")
    bound = leverage_bound(g, u)

    def f(t):
        return w(g, u, t, cfg)

    delta = 1e-9 * bound
    # w(0+) = E/u - 1 > 0, but it can approach that limit slowly (only
    # logarithmically when E is infinite), so move the left end toward 0.
    left = delta
    f_left = f(left)
    while not f_left > 0:
        left *= 1e-4
        if left < 1e-290 * bound:
            raise DomainError(f"w is not positive near t=0 at u={u} (u too close to E?)")
        f_left = f(left)
    right = bound - delta
    f_right = f(right)
    while f_right >= 0:
        delta *= 1e-3
        if delta < 1e-15 * bound:
            return right
        right = bound - delta
        f_right = f(right)
    try:
        return optimize.brentq(f, left, right, xtol=min(1e-15, 0.5 * left), rtol=4 * np.finfo(float).eps, maxiter=500)
    except (RuntimeError, ValueError) as exc:
        raise RootFindingFailure(f"pre-optimal root search failed at u={u}: {exc}") from exc


def growth(g: Game, u: float, t: float, cfg: QuadratureConfig | None = None) -> float:
    """Limit expectation of growth rate ``G_u(t)``.

    At the leverage boundary ``t = u/(u - xi)`` this is
    ``exp(integral of log(a - xi) dF) / (u - xi)``.
    """
    if not (u > 0 and t >= 0):
        raise DomainError(f"growth needs u > 0 and t >= 0, got u={u}, t={t}")
    if t == 0:
        return 1.0
    floor = g.xi * t / u - t + 1
    scale = max(1.0, t, abs(g.xi) * t / u)
    if floor < -TIE_SLACK * scale:
        raise DomainError(f"t={t} exceeds the leverage bound {leverage_bound(g, u)} at u={u}")
    if floor <= TIE_SLACK * scale and g.xi < u:
        return math.exp(g.log_shift_mean) / (u - g.xi)
    gap, _ = _excess_form(g, u, t)
    with np.errstate(divide="ignore"):
        val = integrate(g, lambda e: np.log(np.maximum(e * t + gap, 0.0) / u), cfg, shifted=True)
    return math.exp(val) if val < 709 else math.inf


def optimal_proportion(g: Game, u: float, cfg: QuadratureConfig | None = None) -> ProportionResult:
    """Growth-maximising proportion at price ``u`` with its regime and growth."""
    if not u > 0:
        raise DomainError(f"price must be positive, got {u}")
    st = g.stats
    xi = g.xi
    if u >= st.E * (1 - TIE_SLACK):
        return ProportionResult(u, 0.0, Regime.ZERO_INVEST, 1.0)
    if xi >= 0 and st.invH > 0 and u <= st.invH * (1 + TIE_SLACK):
        return ProportionResult(u, 1.0, Regime.FULL_INVEST, math.exp(g.log_mean) / u)
    if xi < 0 and u <= st.xi_plus_invHxi * (1 + TIE_SLACK):
        return ProportionResult(
            u, u / (u - xi), Regime.BOUNDARY_LEVERAGE, math.exp(g.log_shift_mean) / (u - xi)
        )
    t = pre_optimal(g, u, cfg)
    return ProportionResult(u, t, Regime.INTERIOR_ROOT, growth(g, u, t, cfg))


def kelly_binary(a: float, b: float, p: float, u: float = 1.0) -> tuple[float, float]:
    """Closed-form optimum for a two-outcome game paying ``a`` w.p. ``p`` else ``b``.

    Returns ``(t, G)`` with ``t = q/(1 - a/u) + p/(1 - b/u)`` and
    ``G = (a/u - b/u) (q/(a/u - 1))^q (p/(1 - b/u))^p``.
    """
    if not 0 < p < 1 or not u > 0:
        raise DomainError("kelly_binary needs 0 < p < 1 and u > 0")
    q = 1.0 - p
    ar, br = a / u, b / u
    if not ar > 1 > br:
        raise DomainError(f"kelly_binary needs a/u > 1 > b/u, got {ar}, {br}")
    if not p * ar + q * br > 1:
        raise DomainError("kelly_binary needs expectation above the price")
    if br > 0 and not 1.0 / (p / ar + q / br) < 1:
        raise DomainError("kelly_binary needs 1/H below the price")
    t = q / (1 - ar) + p / (1 - br)
    G = (ar - br) * (q / (ar - 1)) ** q * (p / (1 - br)) ** p
    return t, G


def eta(g: Game, cfg: QuadratureConfig | None = None) -> float:
    """Limit of ``t_u / u`` as ``u -> 0+`` for games with ``xi < 0``."""
    xi = g.xi
    if not xi < 0:
        raise DomainError("eta is only defined for xi < 0")
    st = g.stats
    top = -1.0 / xi
    if st.xi_plus_invHxi >= 0:
        return top

    def phi(y):
        return integrate(g, lambda a: 1.0 / (a * y + 1.0), cfg) - 1.0

    # phi is convex with phi(0) = 0 and phi'(0) = -E < 0; bracket from its minimum.
    eps = 1e-12 * top
    res = optimize.minimize_scalar(phi, bounds=(eps, top - eps), method="bounded", options={"xatol": 1e-12 * top})
    y_min = float(res.x)
    if not phi(y_min) < 0:
        raise RootFindingFailure("could not find a point with phi < 0 when bracketing eta")
    right = top - eps
    while phi(right) <= 0:
        right = 0.5 * (right + top)
        if top - right < 1e-15 * top:
            return right
    return optimize.brentq(phi, y_min, right, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def growth_cap(g: Game, cfg: QuadratureConfig | None = None) -> float:
    """Supremum of the optimal growth over prices (``inf`` unless ``xi < 0``)."""
    if g.xi >= 0:
        return math.inf
    y = eta(g, cfg)
    return math.exp(integrate(g, lambda a: np.log(a * y + 1.0), cfg))


def u_max(g: Game, cfg: QuadratureConfig | None = None) -> float:
    """Price at which the optimal proportion peaks (``xi < 0`` only; diagnostic)."""
    if not g.xi < 0:
        raise DomainError("u_max is only defined for xi < 0")
    E = g.stats.E
    hi = E if math.isfinite(E) else 1e6
    res = optimize.minimize_scalar(
        lambda u: -optimal_proportion(g, u, cfg).t,
        bounds=(1e-9 * hi, hi * (1 - 1e-9)),
        method="bounded",
        options={"xatol": 1e-10 * hi},
    )
    return float(res.x)
