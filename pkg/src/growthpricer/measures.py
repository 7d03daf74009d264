"""Games: a profit function paired with a probability measure.

A :class:`Game` is built from one measure out of a small closed family
(:class:`DiscreteAtoms`, :class:`Uniform`, :class:`LinearTilted`,
:class:`NormalTransform`, :class:`GeometricLadder`) and one profit map
(:class:`Identity`, :class:`Affine`, :class:`TableOnAtoms`,
:class:`Exponential`, :class:`PutPayoff`). On construction the pair is
compiled into atoms, continuous pieces and an optional infinite ladder, and
the essential infimum ``xi`` of the profit is derived analytically.

Everything downstream integrates through :func:`integrate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import ConstantProfit, MalformedSpec, NonPositiveExpectation, TailBoundViolated
from .quadrature import (
    QuadratureConfig,
    _resolve,
    integrate_finite,
    integrate_normal,
    std_normal_pdf,
    sum_ladder,
)

PROB_TOL = 1e-9
DEFAULT_NU_GRID = (0.25, 0.5, 1.0)


# --------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class DiscreteAtoms:
    values: tuple
    probs: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if not values or len(values) != len(probs):
            raise MalformedSpec("atoms need matching, non-empty value and probability lists")
        if any(not math.isfinite(v) for v in values):
            raise MalformedSpec("atom values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise MalformedSpec("atom values must be strictly increasing")
        if any(not (0 < p <= 1) for p in probs):
            raise MalformedSpec("atom probabilities must lie in (0, 1]")
        if abs(sum(probs) - 1.0) > PROB_TOL:
            raise MalformedSpec(f"atom probabilities sum to {sum(probs)!r}, not 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "DiscreteAtoms":
        """Build from ``(value, prob)`` pairs given in any order."""
        ordered = sorted((float(v), float(p)) for v, p in pairs)
        return cls(tuple(v for v, _ in ordered), tuple(p for _, p in ordered))


class DensityFamily:
    """A named density on a finite interval ``[lo, hi]``."""

    lo: float
    hi: float

    def pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def _check_interval(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise MalformedSpec("density support must be a finite interval with lo < hi")


@dataclass(frozen=True)
class Uniform(DensityFamily):
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        self._check_interval()

    def pdf(self, x):
        return np.full_like(np.asarray(x, dtype=float), 1.0 / (self.hi - self.lo))

    def cdf(self, x):
        return np.clip((np.asarray(x, dtype=float) - self.lo) / (self.hi - self.lo), 0.0, 1.0)


@dataclass(frozen=True)
class LinearTilted(DensityFamily):
    """Density proportional to ``x - c`` on ``[lo, hi]``, with ``c <= lo``."""

    lo: float
    hi: float
    c: float

    def __post_init__(self):
        self._check_interval()
        if self.c > self.lo:
            raise MalformedSpec("tilted density needs c <= lo")

    @property
    def _norm(self):
        return 0.5 * ((self.hi - self.c) ** 2 - (self.lo - self.c) ** 2)

    def pdf(self, x):
        return (np.asarray(x, dtype=float) - self.c) / self._norm

    def cdf(self, x):
        xc = np.clip(np.asarray(x, dtype=float), self.lo, self.hi)
        return 0.5 * ((xc - self.c) ** 2 - (self.lo - self.c) ** 2) / self._norm


@dataclass(frozen=True)
class NormalTransform:
    """``x ~ N(mean, sd^2)`` over the whole real line."""

    mean: float
    sd: float

    def __post_init__(self):
        if not (math.isfinite(self.mean) and self.sd > 0 and math.isfinite(self.sd)):
            raise MalformedSpec("normal transform needs a finite mean and sd > 0")


@dataclass(frozen=True)
class GeometricLadder:
    """Atoms ``base**j`` with probability ``2**-j`` for ``j = 1, 2, ...``."""

    base: float = 2.0

    def __post_init__(self):
        if not self.base > 1:
            raise MalformedSpec("ladder base must exceed 1")


Measure = Union[DiscreteAtoms, Uniform, LinearTilted, NormalTransform, GeometricLadder]


# --------------------------------------------------------------------------
# profit maps


@dataclass(frozen=True)
class Identity:
    def __call__(self, x):
        return x


@dataclass(frozen=True)
class Affine:
    slope: float
    intercept: float = 0.0

    def __call__(self, x):
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class TableOnAtoms:
    """Explicit profit per atom, in atom order."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass(frozen=True)
class Exponential:
    """``a(x) = scale * e**x``."""

    scale: float

    def __call__(self, x):
        return self.scale * np.exp(x)


@dataclass(frozen=True)
class PutPayoff:
    """``a(x) = max(strike - forward * e**x, 0)``."""

    strike: float
    forward: float

    def __call__(self, x):
        return np.maximum(self.strike - self.forward * np.exp(x), 0.0)

    @property
    def kink(self):
        """Driver value above which the payoff is zero."""
        return math.log(self.strike / self.forward)


Profit = Union[Identity, Affine, TableOnAtoms, Exponential, PutPayoff]


# --------------------------------------------------------------------------
# compiled representation


@dataclass(frozen=True)
class _Piece:
    """A continuous part of the law of the profit, in an integration variable ``v``.

    ``kind == "interval"``: ``v`` has density ``weight`` on ``[lo, hi]``.
    ``kind == "normal"``: ``v ~ N(mean, sd)`` restricted to ``(lo, hi)``.
    ``profit(v)`` is the profit and ``excess(v)`` is ``profit(v) - xi``,
    evaluated without cancellation. ``xi_end`` is the ``v`` where the profit
    reaches ``xi`` (if it is an endpoint of the range). ``mass_below(e)`` is
    the analytic mass of the piece where ``profit - xi < e``.
    """

    kind: str
    lo: float
    hi: float
    profit: Callable
    excess: Callable
    weight: Optional[Callable] = None
    mean: float = 0.0
    sd: float = 1.0
    xi_end: Optional[float] = None
    mass_below: Optional[Callable] = None

    def density_at(self, v):
        if self.kind == "interval":
            return float(self.weight(np.array([v]))[0])
        return float(std_normal_pdf((v - self.mean) / self.sd)) / self.sd

    def integrate(self, f, cfg, shifted=False):
        value = self.excess if shifted else self.profit
        if self.kind == "interval":
            return integrate_finite(lambda v: f(value(v)) * self.weight(v), self.lo, self.hi, cfg)
        return integrate_normal(lambda v: f(value(v)), self.mean, self.sd, cfg, self.lo, self.hi)

    def support(self, cfg):
        """Finite ``(lo, hi, density)`` covering the piece (tails truncated)."""
        if self.kind == "interval":
            return self.lo, self.hi, self.weight
        big = cfg.normal_tail_sigmas
        m, s = self.mean, self.sd
        return (
            max(self.lo, m - big * s),
            min(self.hi, m + big * s),
            lambda v: std_normal_pdf((v - m) / s) / s,
        )


@dataclass(frozen=True)
class _Parts:
    atom_values: np.ndarray
    atom_probs: np.ndarray
    pieces: tuple
    ladder_base: Optional[float] = None


def _ncdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _compile(measure, profit):
    """Return (parts, xi, atom_at_xi, non_constant)."""
    empty = np.empty(0)
    if isinstance(measure, DiscreteAtoms):
        x = np.array(measure.values)
        if isinstance(profit, TableOnAtoms):
            if len(profit.values) != x.size:
                raise MalformedSpec("profit table length must match the number of atoms")
            a = np.array(profit.values)
        elif isinstance(profit, (Identity, Affine)):
            a = np.asarray(profit(x), dtype=float)
        else:
            raise MalformedSpec(f"{type(profit).__name__} profit is not defined on atoms")
        merged = {}
        for av, p in zip(a.tolist(), measure.probs):
            merged[av] = merged.get(av, 0.0) + p
        vals = np.array(sorted(merged))
        probs = np.array([merged[v] for v in vals])
        parts = _Parts(vals, probs, ())
        return parts, float(vals[0]), True, vals.size > 1

    if isinstance(measure, DensityFamily):
        if isinstance(profit, Identity):
            slope, icpt = 1.0, 0.0
        elif isinstance(profit, Affine):
            slope, icpt = float(profit.slope), float(profit.intercept)
        else:
            raise MalformedSpec(f"{type(profit).__name__} profit is not supported on densities")
        if slope == 0:
            return _Parts(np.array([icpt]), np.array([1.0]), ()), icpt, True, False
        # integrate in the distance d >= 0 from the end where the profit is smallest
        end = measure.lo if slope > 0 else measure.hi
        xi = slope * end + icpt
        sign = 1.0 if slope > 0 else -1.0
        rate = abs(slope)
        piece = _Piece(
            "interval",
            0.0,
            measure.hi - measure.lo,
            lambda d: xi + rate * d,
            lambda d: rate * d,
            lambda d: measure.pdf(end + sign * d),
            xi_end=0.0,
            mass_below=lambda e: float(
                measure.cdf(measure.lo + e / rate) if slope > 0 else 1.0 - measure.cdf(measure.hi - e / rate)
            ),
        )
        return _Parts(empty, empty, (piece,)), xi, False, True

    if isinstance(measure, NormalTransform):
        if isinstance(profit, Exponential):
            if not profit.scale > 0:
                raise MalformedSpec("exponential profit needs a positive scale")
            m, sd, scale = measure.mean, measure.sd, profit.scale
            piece = _Piece(
                "normal",
                -math.inf,
                math.inf,
                profit,
                profit,
                mean=m,
                sd=sd,
                mass_below=lambda e: _ncdf((math.log(e / scale) - m) / sd) if e > 0 else 0.0,
            )
            return _Parts(empty, empty, (piece,)), 0.0, False, True
        if isinstance(profit, PutPayoff):
            if not (profit.strike > 0 and profit.forward > 0):
                raise MalformedSpec("put payoff needs positive strike and forward")
            kink = profit.kink
            m, sd = measure.mean, measure.sd
            zero_mass = _ncdf(-(kink - m) / sd)
            atoms = (np.array([0.0]), np.array([zero_mass])) if zero_mass > 0 else (empty, empty)
            # integrate in the distance d = kink - x so the payoff K(1 - e^-d) keeps full precision
            big = QuadratureConfig().normal_tail_sigmas
            d_lo = max(0.0, kink - (m + big * sd))
            d_hi = kink - (m - big * sd)
            pieces = ()
            if d_hi > d_lo:
                strike = profit.strike

                def payoff(d):
                    return -strike * np.expm1(-d)

                pieces = (
                    _Piece(
                        "interval",
                        d_lo,
                        d_hi,
                        payoff,
                        payoff,
                        lambda d: std_normal_pdf((kink - d - m) / sd) / sd,
                        xi_end=0.0 if d_lo == 0.0 else None,
                        mass_below=lambda e: (
                            1.0 - zero_mass
                            if e >= strike
                            else _ncdf((kink - m) / sd) - _ncdf((kink + math.log1p(-e / strike) - m) / sd)
                        )
                        if e > 0
                        else 0.0,
                    ),
                )
            return _Parts(atoms[0], atoms[1], pieces), 0.0, zero_mass > 0, zero_mass < 1
        raise MalformedSpec(f"{type(profit).__name__} profit is not supported on a normal driver")

    if isinstance(measure, GeometricLadder):
        if not isinstance(profit, Identity):
            raise MalformedSpec("the geometric ladder only supports the identity profit")
        return _Parts(empty, empty, (), measure.base), float(measure.base), True, True

    raise MalformedSpec(f"unknown measure type {type(measure).__name__}")


@dataclass(frozen=True)
class GameStats:
    xi: float
    E: float
    H: float
    H_xi: float
    invH: float
    xi_plus_invHxi: float
    effective: str
    nu: Optional[float] = None


@dataclass(frozen=True)
class Effectiveness:
    status: str  # "yes" | "no" | "declared"
    nu: Optional[float] = None


@dataclass(frozen=True)
class Game:
    """A validated profit/measure pair.

    ``xi`` (essential infimum of the profit) and ``atom_at_xi`` are derived
    from the measure and profit and cannot be supplied by the caller.

    Raises:
        NonPositiveExpectation: when ``E <= 0``.
        ConstantProfit: when the profit is a.e. constant.
        MalformedSpec: for incompatible measure/profit pairs.
    """

    measure: Measure
    profit: Profit = field(default_factory=Identity)
    declared_nu: Optional[float] = None
    xi: float = field(init=False)
    atom_at_xi: bool = field(init=False)

    def __post_init__(self):
        parts, xi, atom, non_constant = _compile(self.measure, self.profit)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "atom_at_xi", atom)
        self.__dict__["_parts"] = parts
        if not math.isfinite(xi):
            raise MalformedSpec("the profit must be bounded below")
        if not self.stats.E > 0:
            raise NonPositiveExpectation(f"expectation {self.stats.E!r} is not positive")
        if not non_constant:
            raise ConstantProfit("profit is almost everywhere constant")

    @property
    def parts(self) -> _Parts:
        return self.__dict__["_parts"]

    @cached_property
    def stats(self) -> GameStats:
        return compute_stats(self)

    @cached_property
    def log_mean(self) -> float:
        """``integral of log a dF`` (``-inf`` with an atom at zero)."""
        return integrate(self, _safe_log)

    @cached_property
    def log_shift_mean(self) -> float:
        """``integral of log(a - xi) dF``."""
        return integrate(self, _safe_log, shifted=True)


def _safe_log(a):
    with np.errstate(divide="ignore"):
        return np.log(np.maximum(a, 0.0))


# --------------------------------------------------------------------------
# integration


def _ladder_sum(base, f, cfg, ratio=0.75):
    # Scan the representable terms once to find where the geometric envelope
    # takes over; terms may grow for a long while before decaying.
    js = np.arange(1, int(1000 / math.log2(base)) + 1)
    with np.errstate(all="ignore"):
        terms = np.asarray(f(base ** js.astype(float)), dtype=float) * 0.5 ** js
    finite = np.isfinite(terms)
    if not finite.all():
        terms = terms[: int(np.argmin(finite))]
    mags = np.abs(terms)
    grows = (mags[1:] > ratio * mags[:-1] * (1 + 1e-12)) & (mags[1:] >= 1e-300)
    late = np.flatnonzero(grows)
    burn_in = 48 if late.size == 0 else max(48, int(late[-1]) + 2)
    if burn_in < terms.size - 16:
        cached = terms

        def term(j):
            if j <= cached.size:
                return cached[j - 1]
            return float(f(np.array([base ** j]))[0]) * 0.5 ** j

        return sum_ladder(term, ratio, cfg, burn_in=burn_in)[0]
    # Monotone divergence test on the late window of terms.
    window = terms[-64:]
    same_sign = bool(np.all(window > 0) or np.all(window < 0))
    growing = bool(np.all(np.abs(window[1:]) >= np.abs(window[:-1]) * (1 - 1e-12)))
    if window.size and same_sign and growing:
        return math.copysign(math.inf, float(window[0]))
    raise TailBoundViolated(f"ladder series terms do not settle under ratio {ratio}")


def integrate(
    g: Game,
    f: Callable[[np.ndarray], np.ndarray],
    cfg: QuadratureConfig | None = None,
    shifted: bool = False,
) -> float:
    """Return ``integral of f(a(x)) dF(x)`` for the game ``g``.

    ``f`` acts on an array of profit values. With ``shifted=True`` it
    receives ``a(x) - xi`` instead, computed without cancellation, which
    matters for integrands that are singular at the essential infimum.
    Ladder games return ``+/-inf`` when the series terms stop decaying and
    keep one sign.
    """
    cfg = _resolve(cfg)
    parts = g.parts
    xi = g.xi
    total = 0.0
    if parts.atom_values.size:
        atoms = parts.atom_values - xi if shifted else parts.atom_values
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.asarray(f(atoms), dtype=float)
        mask = parts.atom_probs > 0
        total += float(np.sum(vals[mask] * parts.atom_probs[mask]))
    for piece in parts.pieces:
        total += piece.integrate(f, cfg, shifted)[0]
    if parts.ladder_base is not None:
        fl = (lambda a: f(a - xi)) if shifted else f
        total += _ladder_sum(parts.ladder_base, fl, cfg)
    return total


def _reciprocal_diverges(g: Game, level: float) -> bool:
    """True when ``integral of 1/(a - level) dF`` is +inf for ``level == xi``."""
    if g.atom_at_xi:
        return True
    for piece in g.parts.pieces:
        end = piece.xi_end
        # Profit is affine (or smooth with non-zero slope) at the xi end, so a
        # positive density there makes 1/(a - xi) non-integrable.
        if end is not None and math.isfinite(end) and piece.density_at(end) > 0:
            return True
    return False


def compute_stats(g: Game, cfg: QuadratureConfig | None = None) -> GameStats:
    cfg = _resolve(cfg)
    xi = g.xi
    base = g.parts.ladder_base
    if base is not None:
        # sum (base/2)^j and sum (1/(2 base))^j
        E = math.inf if base >= 2 else (base / 2) / (1 - base / 2)
        H = 1.0 / (2 * base - 1)
    else:
        E = integrate(g, lambda a: a, cfg)
        H = math.nan
        if xi > 0:
            with np.errstate(over="ignore"):
                H = integrate(g, lambda a: 1.0 / a, cfg)
        elif xi == 0:
            H = math.inf if _reciprocal_diverges(g, 0.0) else integrate(g, lambda a: 1.0 / a, cfg)
    if g.atom_at_xi or _reciprocal_diverges(g, xi):
        H_xi = math.inf
    elif xi == 0:
        H_xi = H
    else:
        H_xi = integrate(g, lambda e: 1.0 / e, cfg, shifted=True)
    invH = math.nan if math.isnan(H) else (0.0 if math.isinf(H) else 1.0 / H)
    inv_hxi = 0.0 if math.isinf(H_xi) else 1.0 / H_xi
    eff = effectiveness(g)
    return GameStats(xi, E, H, H_xi, invH, xi + inv_hxi, eff.status, eff.nu)


def stats(g: Game, cfg: QuadratureConfig | None = None) -> GameStats:
    """Return the cached summary statistics of ``g`` (recomputed if ``cfg`` is given)."""
    return g.stats if cfg is None else compute_stats(g, cfg)


def effectiveness(g: Game, nu_grid: Sequence[float] = DEFAULT_NU_GRID) -> Effectiveness:
    """Check ``integral over {a > 1} of a**nu dF < inf`` for the grid values.

    The test is analytic per family: bounded profits and the lognormal driver
    have every moment; the ladder converges iff ``base**nu < 2`` (a declared
    exponent is tried after the grid). ``"declared"`` is reserved for laws
    this analysis cannot certify.
    """
    grid = sorted(float(v) for v in nu_grid if v > 0)
    if not grid:
        raise ValueError("nu_grid needs a positive value")
    base = g.parts.ladder_base
    if base is not None:
        ok = [nu for nu in grid if base ** nu < 2.0]
        if not ok and g.declared_nu is not None and base ** g.declared_nu < 2.0:
            ok = [g.declared_nu]  # the declared exponent is checked, not trusted
        return Effectiveness("yes", ok[0]) if ok else Effectiveness("no")
    if isinstance(g.measure, (DiscreteAtoms, Uniform, LinearTilted, NormalTransform)):
        return Effectiveness("yes", grid[0])
    if g.declared_nu is not None:
        return Effectiveness("declared", g.declared_nu)
    return Effectiveness("no")


def discretize(g: Game, panels: int = 48, cfg: QuadratureConfig | None = None):
    """Return ``(profits, weights)`` approximating the law of the profit.

    Atoms are exact; continuous pieces use composite Gauss-Legendre on a
    mesh graded toward both ends; ladders are cut where ``2**-j < 1e-17``.
    Used by tensor-product (two-game) integrals.
    """
    cfg = _resolve(cfg)
    parts = g.parts
    vals = [parts.atom_values]
    wts = [parts.atom_probs]
    gx, gw = np.polynomial.legendre.leggauss(16)
    for piece in parts.pieces:
        lo, hi, pdf = piece.support(cfg)
        if lo >= hi:
            continue
        # geometric grading toward both ends of [0, 1] in the smoothing variable
        inner = np.geomspace(1e-8, 0.5, panels // 2)
        edges = np.unique(np.concatenate([[0.0], inner, 1.0 - inner[::-1], [1.0]]))
        a_, b_ = edges[:-1], edges[1:]
        s = 0.5 * (a_ + b_)[:, None] + 0.5 * (b_ - a_)[:, None] * gx[None, :]
        w = 0.5 * (b_ - a_)[:, None] * gw[None, :]
        span = hi - lo
        x = lo + span * s * s * (3 - 2 * s)
        jac = 6 * span * s * (1 - s)
        vals.append(piece.profit(x).ravel())
        wts.append((w * jac * pdf(x)).ravel())
    if parts.ladder_base is not None:
        j = np.arange(1, 58)
        vals.append(parts.ladder_base ** j.astype(float))
        wts.append(0.5 ** j)
    return np.concatenate(vals), np.concatenate(wts)


# --------------------------------------------------------------------------
# spec parsing


def _num(spec, key, default=None):
    if key not in spec:
        if default is None:
            raise MalformedSpec(f"missing field {key!r}")
        return default
    try:
        return float(spec[key])
    except (TypeError, ValueError) as exc:
        raise MalformedSpec(f"field {key!r} must be numeric") from exc


def _parse_profit(spec):
    raw = spec.get("profit")
    if raw is None or raw == "identity":
        return Identity()
    if isinstance(raw, dict):
        kind = raw.get("type", "affine")
        if kind == "identity":
            return Identity()
        if kind == "affine":
            return Affine(_num(raw, "slope"), _num(raw, "intercept", 0.0))
        if kind == "table":
            return TableOnAtoms(tuple(raw["values"]))
    if isinstance(raw, list):
        return TableOnAtoms(tuple(raw))
    raise MalformedSpec(f"unrecognised profit {raw!r}")


def build_game(spec: dict) -> Game:
    """Build a :class:`Game` from a parsed game-spec document.

    Recognised ``kind`` values: ``discrete``, ``uniform``, ``tilted``,
    ``lognormal``, ``put``, ``stpetersburg``. See the README for fields.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MalformedSpec("a game spec must be an object with a 'kind' field")
    kind = spec["kind"]
    nu = spec.get("effective_nu")
    nu = None if nu is None else float(nu)
    if kind == "discrete":
        atoms = spec.get("atoms")
        if not isinstance(atoms, list) or not all(
            isinstance(p, (list, tuple)) and len(p) == 2 for p in atoms
        ):
            raise MalformedSpec("'atoms' must be a list of [value, probability] pairs")
        profit = _parse_profit(spec)
        if isinstance(profit, TableOnAtoms):
            # keep table order aligned with the sorted atoms
            order = sorted(range(len(atoms)), key=lambda i: float(atoms[i][0]))
            profit = TableOnAtoms(tuple(profit.values[i] for i in order))
        return Game(DiscreteAtoms.from_pairs(atoms), profit, nu)
    if kind == "uniform":
        return Game(Uniform(_num(spec, "lo", 0.0), _num(spec, "hi", 1.0)), _parse_profit(spec), nu)
    if kind == "tilted":
        lo = _num(spec, "lo")
        return Game(LinearTilted(lo, _num(spec, "hi"), _num(spec, "c", lo)), _parse_profit(spec), nu)
    if kind == "stpetersburg":
        return Game(GeometricLadder(_num(spec, "base", 2.0)), Identity(), nu)
    if kind in ("lognormal", "put"):
        from . import options

        if kind == "lognormal":
            return options.lognormal_game(_num(spec, "S"), _num(spec, "sigma"), _num(spec, "r"))
        return options.put_game(options.market_params_from_spec(spec))
    raise MalformedSpec(f"unknown game kind {kind!r}")
