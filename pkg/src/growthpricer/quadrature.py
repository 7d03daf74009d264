"""Integration engine used by every other module.

Three entry points:

* :func:`integrate_finite` -- adaptive Gauss-Kronrod (7/15) on a finite
  interval, after a smoothing substitution that tames integrable
  logarithmic singularities at either endpoint.
* :func:`integrate_normal` -- expectation of ``f(X)`` for a normal ``X``,
  truncated at a configurable number of standard deviations.
* :func:`sum_ladder` -- series summation with a geometric tail envelope.

Integrands are expected to be vectorised: they receive a numpy array and
return an array of the same shape.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import QuadratureFailure, TailBoundViolated

TOL_ENV_VAR = "GROWTHPRICER_TOL"


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    normal_tail_sigmas: float = 12.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0 and self.max_subdivisions > 0):
            raise ValueError("quadrature tolerances and limits must be strictly positive")
        if self.normal_tail_sigmas < 8:
            raise ValueError("normal_tail_sigmas must be at least 8")

    def with_tolerances(self, abs_tol=None, rel_tol=None) -> "QuadratureConfig":
        return replace(
            self,
            abs_tol=self.abs_tol if abs_tol is None else abs_tol,
            rel_tol=self.rel_tol if rel_tol is None else rel_tol,
        )


def default_config() -> QuadratureConfig:
    """Default configuration, honouring the ``GROWTHPRICER_TOL`` override."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        tol = float(raw)
        return QuadratureConfig(abs_tol=tol, rel_tol=tol)
    return QuadratureConfig()


def _resolve(cfg):
    return default_config() if cfg is None else cfg


# Kronrod 15-point nodes/weights on [-1, 1] with the embedded 7-point Gauss rule.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
WEIGHTS_G = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (0-based 1, 3, 5, 7, ...).
WEIGHTS_G[[1, 3, 5]] = _WG[:3]
WEIGHTS_G[7] = _WG[3]
WEIGHTS_G[[9, 11, 13]] = _WG[2::-1]


def _gk_panels(f, a, b):
    """Apply the 7/15 pair to every panel [a_i, b_i]; return (kronrod, |k - g|)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        raise QuadratureFailure("integrand returned a non-finite value inside the interval")
    k = half * (fx @ WEIGHTS_K)
    g = half * (fx @ WEIGHTS_G)
    return k, np.abs(k - g)


def _adaptive(f, lo, hi, cfg, initial_panels=8):
    edges = np.linspace(lo, hi, initial_panels + 1)
    a, b = edges[:-1], edges[1:]
    val, err = _gk_panels(f, a, b)
    width = hi - lo
    while True:
        total = float(val.sum())
        total_err = float(err.sum())
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= tol:
            return total, total_err
        if a.size >= cfg.max_subdivisions:
            raise QuadratureFailure(
                f"max_subdivisions={cfg.max_subdivisions} exhausted "
                f"(estimate {total:.6g}, error {total_err:.3g} > {tol:.3g})"
            )
        # Split the largest-error panels until the untouched ones fit in tol/2.
        order = np.argsort(err)[::-1]
        rest = total_err - np.cumsum(err[order])
        n_split = int(np.searchsorted(-rest, -0.5 * tol)) + 1
        n_split = min(n_split, cfg.max_subdivisions - a.size)
        bad = np.zeros(a.size, dtype=bool)
        bad[order[:n_split]] = True
        ab, bb = a[bad], b[bad]
        mb = 0.5 * (ab + bb)
        na = np.concatenate([ab, mb])
        nb = np.concatenate([mb, bb])
        nv, ne = _gk_panels(f, na, nb)
        good = ~bad
        a = np.concatenate([a[good], na])
        b = np.concatenate([b[good], nb])
        val = np.concatenate([val[good], nv])
        err = np.concatenate([err[good], ne])


def integrate_finite(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    cfg: QuadratureConfig | None = None,
    substitute: bool = True,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[lo, hi]``; return ``(value, error_estimate)``.

    With ``substitute`` (the default) the map ``x = lo + (hi - lo) s^2 (3 - 2s)``
    is applied first. Its Jacobian vanishes at both ends, which turns a
    ``log``-type endpoint singularity into a bounded integrand.

    Raises:
        QuadratureFailure: when ``cfg.max_subdivisions`` panels do not reach
            ``max(abs_tol, rel_tol * |value|)``.
    """
    cfg = _resolve(cfg)
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return 0.0, 0.0
    if lo > hi:
        v, e = integrate_finite(f, hi, lo, cfg, substitute)
        return -v, e
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise QuadratureFailure("integrate_finite needs a finite interval")
    if not substitute:
        return _adaptive(f, lo, hi, cfg)
    span = hi - lo

    def g(s):
        x = lo + span * s * s * (3.0 - 2.0 * s)
        return f(x) * (6.0 * span * s * (1.0 - s))

    return _adaptive(g, 0.0, 1.0, cfg)


_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def std_normal_pdf(z):
    return _INV_SQRT_2PI * np.exp(-0.5 * np.square(z))


def integrate_normal(
    f: Callable[[np.ndarray], np.ndarray],
    mean: float,
    sd: float,
    cfg: QuadratureConfig | None = None,
    lo: float = -math.inf,
    hi: float = math.inf,
) -> tuple[float, float]:
    """Return ``(E[f(X) 1{lo < X < hi}], error)`` for ``X ~ N(mean, sd^2)``.

    The domain is clipped to ``mean +/- normal_tail_sigmas * sd``. The mass
    outside is bounded with the Mills ratio ``phi(L)/L`` and the bound,
    scaled by ``|f|`` at the cut, is added to the returned error.
    """
    cfg = _resolve(cfg)
    if not sd > 0:
        raise ValueError("sd must be positive")
    big = cfg.normal_tail_sigmas
    zlo = max(-big, (lo - mean) / sd)
    zhi = min(big, (hi - mean) / sd)
    if zlo >= zhi:
        return 0.0, 0.0

    def g(z):
        return f(mean + sd * z) * std_normal_pdf(z)

    value, err = integrate_finite(g, zlo, zhi, cfg)
    mills = _INV_SQRT_2PI * math.exp(-0.5 * big * big) / big
    for z_cut, clipped in ((zlo, zlo == -big), (zhi, zhi == big)):
        if clipped:
            edge = float(np.abs(np.asarray(f(np.array([mean + sd * z_cut])))).max())
            err += edge * mills
    return value, err


def sum_ladder(
    term: Callable[[int], float],
    ratio: float = 0.75,
    cfg: QuadratureConfig | None = None,
    start: int = 1,
    burn_in: int = 48,
    max_terms: int = 5000,
) -> tuple[float, float]:
    """Sum ``term(j)`` for ``j >= start`` under a geometric envelope.

    Once past ``burn_in`` terms, each term must satisfy
    ``|term(j+1)| <= ratio * |term(j)|``; the remainder is then at most
    ``|term(j)| * ratio / (1 - ratio)``, and summation stops when that bound
    drops below ``abs_tol``. Returns ``(value, tail_bound)``.

    Raises:
        TailBoundViolated: a term escapes the envelope after the burn-in.
    """
    cfg = _resolve(cfg)
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    total = 0.0
    comp = 0.0  # Kahan compensation
    prev = None
    n = 0
    for j in range(start, start + max_terms):
        tj = float(term(j))
        if not math.isfinite(tj):
            raise TailBoundViolated(f"term {j} is not finite")
        y = tj - comp
        s = total + y
        comp = (s - total) - y
        total = s
        n += 1
        if n > burn_in and prev is not None:
            tiny = abs(tj) < 1e-300
            if not tiny and abs(tj) > ratio * abs(prev) * (1 + 1e-12):
                raise TailBoundViolated(
                    f"term {j} ({tj:.3g}) exceeds geometric envelope ratio {ratio}"
                )
            bound = abs(tj) * ratio / (1.0 - ratio)
            if bound < cfg.abs_tol * 1e-2:
                return total, bound
        prev = tj
    raise TailBoundViolated(f"no convergence within {max_terms} terms")
