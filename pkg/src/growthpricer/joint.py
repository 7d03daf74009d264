"""Two independent games played at a common price.

With proportions ``t`` and ``s`` staked on games ``a`` and ``b`` bought at
price ``u``, capital multiplies by ``(a t + b s)/u - t - s + 1`` per attempt.
The growth objective

    L(t, s) = sum_i sum_k p_i q_k log(1 + t alpha_i + s beta_k),
    alpha = a/u - 1,  beta = b/u - 1,

is concave, so its maximum over the feasible polygon (the simplex
``t, s >= 0, t + s <= 1`` cut by ``1 + t alpha_min + s beta_min > 0``) is the
best of an interior stationary point, an edge maximum or a vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .errors import DomainError, IneffectiveGame, RootFindingFailure, TargetOutOfRange
from .measures import Game, discretize, effectiveness
from .pricer import growth_target

GRID = 50
FLOOR_MARGIN = 1e-10
ACTIVE_TOL = 1e-9
_GRID_PANELS = 8


@dataclass(frozen=True)
class Leg:
    """A discretised game: outcome profits, weights and essential infimum."""

    values: np.ndarray
    weights: np.ndarray
    xi: float
    E: float


def point_mass(value: float = 0.0) -> Leg:
    """A degenerate leg that always pays ``value``.

    With ``value = 0`` staking on it only loses, so the optimum puts ``s = 0``
    and joint results reduce to single-game ones.
    """
    return Leg(np.array([float(value)]), np.array([1.0]), float(value), float(value))


def _as_leg(g, panels: Optional[int] = None) -> Leg:
    if isinstance(g, Leg):
        return g
    if effectiveness(g).status == "no":
        raise IneffectiveGame("joint optimisation needs effective games")
    vals, wts = discretize(g) if panels is None else discretize(g, panels=panels)
    keep = wts > 0
    return Leg(vals[keep], wts[keep], g.xi, g.stats.E)


@dataclass(frozen=True)
class JointResult:
    t: float
    s: float
    growth: float
    price: float
    active: tuple = ()
    kkt_residual: float = 0.0


class _Objective:
    def __init__(self, la: Leg, lb: Leg, u: float):
        if not u > 0:
            raise DomainError(f"price must be positive, got {u}")
        self.alpha = la.values / u - 1.0
        self.beta = lb.values / u - 1.0
        self.w = la.weights[:, None] * lb.weights[None, :]
        self.amin = la.xi / u - 1.0
        self.bmin = lb.xi / u - 1.0

    def floor(self, t, s):
        return 1.0 + t * self.amin + s * self.bmin

    def _z(self, t, s):
        return 1.0 + t * self.alpha[:, None] + s * self.beta[None, :]

    def value(self, t, s):
        z = self._z(t, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            return float(np.sum(self.w * np.log(z)))

    def grad(self, t, s):
        r = self.w / self._z(t, s)
        return np.array([float(np.sum(r * self.alpha[:, None])), float(np.sum(r * self.beta[None, :]))])

    def hess(self, t, s):
        r = self.w / self._z(t, s) ** 2
        A, B = self.alpha[:, None], self.beta[None, :]
        h_tt = -float(np.sum(r * A * A))
        h_ts = -float(np.sum(r * A * B))
        h_ss = -float(np.sum(r * B * B))
        return np.array([[h_tt, h_ts], [h_ts, h_ss]])


def _constraints(obj: _Objective):
    """Rows ``(c, d)`` of ``c . x <= d`` describing the feasible polygon."""
    return [
        (np.array([-1.0, 0.0]), 0.0),
        (np.array([0.0, -1.0]), 0.0),
        (np.array([1.0, 1.0]), 1.0),
        (np.array([-obj.amin, -obj.bmin]), 1.0 - FLOOR_MARGIN),
    ]


def _polygon(cons):
    """Vertices of ``{c . x <= d}`` (bounded by the simplex rows), counter-clockwise."""
    pts = []
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            M = np.array([cons[i][0], cons[j][0]])
            if abs(np.linalg.det(M)) < 1e-14:
                continue
            x = np.linalg.solve(M, np.array([cons[i][1], cons[j][1]]))
            if all(c @ x <= d + 1e-12 for c, d in cons):
                pts.append(x)
    if not pts:
        return []
    centre = np.mean(pts, axis=0)
    pts.sort(key=lambda p: math.atan2(p[1] - centre[1], p[0] - centre[0]))
    out = []
    for p in pts:
        if not out or np.linalg.norm(p - out[-1]) > 1e-13:
            out.append(p)
    if len(out) > 1 and np.linalg.norm(out[0] - out[-1]) <= 1e-13:
        out.pop()
    return out


def _inside(cons, x, strict=False):
    pad = 0.0 if not strict else 1e-15
    return all(c @ x < d - pad if strict else c @ x <= d for c, d in cons)


def _edge_max(obj, p0, p1):
    d = p1 - p0

    def slope(lam):
        x = p0 + lam * d
        return float(obj.grad(x[0], x[1]) @ d)

    if slope(0.0) <= 0:
        return p0
    if slope(1.0) >= 0:
        return p1
    lam = optimize.brentq(slope, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return p0 + lam * d


def _newton(obj, cons, x0, max_iter=100):
    """Damped Newton ascent kept strictly inside the polygon; ``None`` if it leaves."""
    x = np.array(x0, dtype=float)
    fx = obj.value(*x)
    for _ in range(max_iter):
        g = obj.grad(*x)
        if np.linalg.norm(g) < 1e-12:
            return x
        H = obj.hess(*x)
        try:
            step = -np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            step = g
        if step @ g <= 0:
            step = g
        lam = 1.0
        while lam > 1e-12:
            y = x + lam * step
            if _inside(cons, y, strict=True):
                fy = obj.value(*y)
                if fy >= fx + 1e-4 * lam * (g @ step) or lam * np.linalg.norm(step) < 1e-14:
                    break
            lam *= 0.5
        else:
            return None
        if np.linalg.norm(y - x) < 1e-15:
            x = y
            break
        x, fx = y, fy
    return x if np.linalg.norm(obj.grad(*x)) < 1e-9 else None


def _kkt(obj, cons, x):
    """Largest ascent rate along a feasible unit direction (0 at a KKT point)."""
    g = obj.grad(*x)
    active = [c for c, d in cons if abs(c @ x - d) <= ACTIVE_TOL]
    if all(c @ g <= 0 for c in active):
        return float(np.linalg.norm(g)), active
    rays = []
    for c in active:
        perp = np.array([-c[1], c[0]]) / np.linalg.norm(c)
        for r in (perp, -perp):
            if all(a @ r <= 1e-14 for a in active):
                rays.append(r)
    best = max((float(g @ r) for r in rays), default=0.0)
    return max(0.0, best), active


def _grid_start(ga, gb, u):
    """Best point of a 50 x 50 grid on the simplex, on a coarser discretisation."""
    coarse = _Objective(ga, gb, u)
    ts = (np.arange(GRID) + 0.5) / GRID
    best, best_x = -math.inf, None
    for t in ts:
        for s in ts:
            x = np.array([t, s])
            if t + s < 1 and coarse.floor(t, s) > FLOOR_MARGIN:
                v = coarse.value(t, s)
                if v > best:
                    best, best_x = v, x
    return best_x


def _name(c, cons):
    names = ("t>=0", "s>=0", "t+s<=1", "feasibility")
    for (ci, _), name in zip(cons, names):
        if ci is c:
            return name
    return "?"


def joint_growth(ga, gb, u: float, t: float, s: float) -> float:
    """``exp`` of the tensor-product log-growth at proportions ``(t, s)``."""
    if t < 0 or s < 0:
        raise DomainError("proportions must be non-negative")
    obj = _Objective(_as_leg(ga), _as_leg(gb), u)
    if not obj.floor(t, s) > 0:
        raise DomainError(f"(t, s) = ({t}, {s}) is not feasible at u={u}")
    return math.exp(obj.value(t, s))


def joint_optimize(ga, gb, u: float) -> JointResult:
    """Maximise the joint growth over the feasible polygon at price ``u``."""
    la, lb = _as_leg(ga), _as_leg(gb)
    obj = _Objective(la, lb, u)
    cons = _constraints(obj)
    verts = _polygon(cons)
    candidates = list(verts)
    for i in range(len(verts)):
        candidates.append(_edge_max(obj, verts[i], verts[(i + 1) % len(verts)]))
    coarse_a = _as_leg(ga, _GRID_PANELS) if not isinstance(ga, Leg) else la
    coarse_b = _as_leg(gb, _GRID_PANELS) if not isinstance(gb, Leg) else lb
    start = _grid_start(coarse_a, coarse_b, u)
    if start is not None:
        x = _newton(obj, cons, start)
        if x is not None:
            candidates.append(x)
    values = [obj.value(*x) for x in candidates]
    best = candidates[int(np.nanargmax(values))]
    best = np.maximum(best, 0.0)
    residual, active = _kkt(obj, cons, best)
    return JointResult(
        float(best[0]),
        float(best[1]),
        math.exp(obj.value(*best)),
        u,
        tuple(_name(c, cons) for c in active),
        residual,
    )


def _max_growth(ga, gb, u):
    return joint_optimize(ga, gb, u).growth


def joint_price(ga, gb, rate: float, compounding="simple", horizon=None, checks: int = 9) -> JointResult:
    """Common price ``u`` at which the maximised joint growth equals the target.

    The bracket is checked for monotone decrease at ``checks`` interior
    points before the root search; a violation raises
    :class:`RootFindingFailure` instead of returning a doubtful price.
    """
    target = growth_target(rate, compounding, horizon)
    la, lb = _as_leg(ga), _as_leg(gb)
    hi = max(la.E, lb.E)
    if not hi > 0:
        raise TargetOutOfRange("neither leg has a positive expectation, so no price reaches the target", cap=1.0)
    if not math.isfinite(hi):
        hi = 1.0
        for _ in range(200):
            if _max_growth(la, lb, hi) < target:
                break
            hi *= 2.0
        else:
            raise RootFindingFailure("could not find an upper joint price bracket")
    lo = 0.5 * hi
    for _ in range(80):
        if _max_growth(la, lb, lo) > target:
            break
        hi = lo
        lo *= 0.5
    else:
        raise TargetOutOfRange(
            f"target {target} is not reached even at u={lo:.3g}; the price bracket collapses toward 0",
            cap=_max_growth(la, lb, lo),
        )
    grid = np.geomspace(lo, hi, checks)
    vals = [_max_growth(la, lb, u) for u in grid]
    for u0, u1, v0, v1 in zip(grid, grid[1:], vals, vals[1:]):
        if v1 > v0 + 1e-12 or (v0 > 1 + 1e-12 and not v1 < v0):
            raise RootFindingFailure(f"maximised joint growth is not decreasing between u={u0:.6g} and u={u1:.6g}")
    u = optimize.brentq(lambda v: _max_growth(la, lb, v) - target, lo, hi, xtol=1e-13 * max(1.0, hi), rtol=1e-14)
    return joint_optimize(la, lb, u)
