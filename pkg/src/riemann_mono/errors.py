"""Exception types shared across the package."""


class RiemannMonoError(Exception):
    pass


class DomainError(RiemannMonoError, ValueError):
    """Argument outside the domain of an operation (x not in [0, 1], n too small)."""


class ParameterError(RiemannMonoError, ValueError):
    """Invalid construction parameter, e.g. an f_b family with b >= 2."""


class DegreeLimitError(RiemannMonoError, ValueError):
    pass


class TailBoundError(RiemannMonoError, ArithmeticError):
    """A coefficient provider cannot certify the requested truncation tolerance."""


class AccuracyError(RiemannMonoError, ArithmeticError):
    pass


class VerificationMismatch(RiemannMonoError, AssertionError):
    """An analytic classification disagrees with its numerical cross-check."""


class GrammarError(RiemannMonoError, ValueError):
    pass
