"""Step approximations of a game and the growth-rate double sequence.

For a level ``N`` the profit is replaced by the step function ``f_N`` taking
values ``a_j = xi + (j - 1) / 2**N`` for ``j = 1..M`` with ``M = 2**N N + 1``;
``f_N = a_j`` where ``a_j <= a < a_{j+1}`` and ``f_N = a_M = xi + N`` above.
Playing ``n`` rounds of the step game at a fixed proportion gives the growth
rate per attempt ``X_{N,n}``, whose mean and variance have closed forms

    E[X]  = (sum_j p_j g_j^{1/n})^n,
    V[X]  = (sum_j p_j g_j^{2/n})^n - E[X]^2,    g_j = a_j t / u - t + 1.

Both are evaluated in log space so ``n`` can be very large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, NumericalError
from .growth import growth
from .measures import Game

VARIANCE_CLAMP = 1e-12
_LADDER_MASS_CUT = 1e-18


@dataclass(frozen=True)
class StepApprox:
    N: int
    atoms: tuple  # ((a_j, p_j), ...) with a_j increasing
    source: Game

    @property
    def values(self) -> np.ndarray:
        return np.array([a for a, _ in self.atoms])

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for _, p in self.atoms])


@dataclass(frozen=True)
class SequenceStats:
    N: int
    n: int
    mean: float
    variance: float


def _slab_masses(g: Game, N: int) -> np.ndarray:
    """Mass of each slab ``[a_j, a_{j+1})`` (last slab unbounded above)."""
    scale = 2.0 ** N
    M = (2 ** N) * N + 1
    masses = np.zeros(M)
    parts = g.parts
    xi = g.xi

    def add_points(values, probs):
        # floor onto the dyadic grid; the small guard keeps exact grid points exact
        pos = np.floor((np.asarray(values) - xi) * scale * (1 + 1e-14) + 1e-12)
        idx = np.clip(pos, 0, M - 1).astype(np.int64)
        np.add.at(masses, idx, probs)

    if parts.atom_values.size:
        add_points(parts.atom_values, parts.atom_probs)
    if parts.ladder_base is not None:
        base = parts.ladder_base
        j_max = int(math.ceil(-math.log2(_LADDER_MASS_CUT)))
        j = np.arange(1, j_max + 1)
        add_points(base ** j.astype(float), 0.5 ** j)
        masses[-1] += 0.5 ** j_max
    if parts.pieces:
        levels = np.arange(1, M) / scale  # excess thresholds a_{j+1} - xi
        for piece in parts.pieces:
            below = np.array([piece.mass_below(e) for e in levels])
            total = piece.mass_below(math.inf)
            cum = np.concatenate([[0.0], below, [total]])
            masses += np.maximum(np.diff(cum), 0.0)
    return masses


def step_approx(g: Game, N: int) -> StepApprox:
    """Level-``N`` step approximation of the profit, with empty slabs dropped."""
    if int(N) != N or N < 1:
        raise DomainError(f"step level N must be a positive integer, got {N}")
    N = int(N)
    masses = _slab_masses(g, N)
    values = g.xi + np.arange(masses.size) / 2.0 ** N
    keep = masses > 0
    atoms = tuple((float(a), float(p)) for a, p in zip(values[keep], masses[keep]))
    return StepApprox(N, atoms, g)


def _log_factors(s: StepApprox, u: float, t: float) -> np.ndarray:
    if not u > 0 or t < 0:
        raise DomainError(f"sequence statistics need u > 0 and t >= 0, got u={u}, t={t}")
    a = s.values
    # (a - xi) t / u + floor, with floor = xi t / u - t + 1
    xi = s.atoms[0][0]
    floor = xi * t / u - t + 1.0
    g = (a - xi) * t / u + floor
    if not floor > 0:
        raise DomainError(f"proportion t={t} is not admissible at u={u} (xi t/u - t + 1 = {floor})")
    return np.log(g)


def _log_power_mean(logs: np.ndarray, probs: np.ndarray, k: float) -> float:
    """``log((sum p g^k)^(1/k))`` computed without cancellation for small ``k``."""
    return math.log1p(float(np.sum(probs * np.expm1(k * logs)))) / k


def sequence_stats(s: StepApprox, u: float, t: float, n: int) -> SequenceStats:
    if int(n) != n or n < 1:
        raise DomainError(f"attempt count n must be a positive integer, got {n}")
    n = int(n)
    logs = _log_factors(s, u, t)
    probs = s.probs
    l1 = _log_power_mean(logs, probs, 1.0 / n)
    l2 = 2.0 * _log_power_mean(logs, probs, 2.0 / n)
    mean = math.exp(l1)
    var = math.exp(2.0 * l1) * math.expm1(l2 - 2.0 * l1)
    if var < 0:
        if var < -VARIANCE_CLAMP:
            raise NumericalError(f"negative variance {var} beyond round-off")
        var = 0.0
    return SequenceStats(s.N, n, mean, var)


def step_limit(s: StepApprox, u: float, t: float) -> float:
    """``n -> inf`` limit of the mean at fixed ``N``: ``exp(sum p_j log g_j)``."""
    return math.exp(float(np.sum(s.probs * _log_factors(s, u, t))))


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple
    limit: float


def convergence_table(
    g: Game, u: float, t: float, N_list: Iterable[int], n_list: Iterable[int], cfg=None
) -> ConvergenceTable:
    n_list = list(n_list)
    rows = []
    for N in N_list:
        s = step_approx(g, N)
        rows.extend(sequence_stats(s, u, t, n) for n in n_list)
    return ConvergenceTable(tuple(rows), growth(g, u, t, cfg))
