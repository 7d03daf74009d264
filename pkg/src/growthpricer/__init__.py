"""Growth-optimal proportions of investment and growth-rate pricing of games."""

from .errors import (
    ConstantProfit,
    DomainError,
    GrowthPricerError,
    IneffectiveGame,
    InfiniteExpectation,
    MalformedSpec,
    NonPositiveExpectation,
    NumericalError,
    QuadratureFailure,
    RootFindingFailure,
    TailBoundViolated,
    TargetOutOfRange,
)
from .growth import (
    GrowthCurvePoint,
    ProportionResult,
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
from .joint import JointResult, joint_growth, joint_optimize, joint_price, point_mass
from .measures import (
    Affine,
    DiscreteAtoms,
    Exponential,
    Game,
    GameStats,
    GeometricLadder,
    Identity,
    LinearTilted,
    NormalTransform,
    PutPayoff,
    TableOnAtoms,
    Uniform,
    build_game,
    effectiveness,
    integrate,
    stats,
)
from .options import (
    MarketParams,
    black_scholes_put,
    lognormal_game,
    normal_cdf,
    put_expectation,
    put_game,
)
from .pricer import Compounding, PriceResult, expectation_price, growth_target, price, pricing_curve
from .quadrature import QuadratureConfig, integrate_finite, integrate_normal, sum_ladder
from .sequence import SequenceStats, StepApprox, convergence_table, sequence_stats, step_approx

__version__ = "0.1.0"
