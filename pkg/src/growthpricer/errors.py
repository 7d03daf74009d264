"""Exception hierarchy shared by every module."""


class GrowthPricerError(Exception):
    """Base class for all package errors."""


class DomainError(GrowthPricerError, ValueError):
    """Arguments fall outside the mathematical domain of an operation."""


class MalformedSpec(GrowthPricerError, ValueError):
    """A game description could not be parsed."""


class NonPositiveExpectation(DomainError):
    pass


class ConstantProfit(DomainError):
    pass


class InfiniteExpectation(DomainError):
    pass


class IneffectiveGame(DomainError):
    pass


class TargetOutOfRange(DomainError):
    """The requested growth target is not attainable.

    ``cap`` holds the supremum of attainable growth when it is known.
    """

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class NumericalError(GrowthPricerError, ArithmeticError):
    """A numerical routine failed to meet its tolerance."""


class QuadratureFailure(NumericalError):
    pass


class TailBoundViolated(NumericalError):
    pass


class RootFindingFailure(NumericalError):
    pass
