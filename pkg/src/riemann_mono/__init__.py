"""Monotonicity of Riemann sums: evaluation, exact polynomial decisions and rule-based certificates."""
from .certify import Certificate, audit, certify
from .errors import (
    AccuracyError, DegreeLimitError, DomainError, GrammarError, ParameterError, RiemannMonoError,
    TailBoundError, VerificationMismatch,
)
from .funcspec import (
    AffineSum, BlackBox, FbFamily, FourierSpec, FunctionSpec, Negate, Polynomial, Reflect, ShapeReport,
    probe_shape, reflect, symmetrize,
)
from .grammar import format_spec, parse_spec
from .kinds import GeneralizedNodes, Shifted, format_kind, parse_kind
from .polyexact import ExactSumForm, ExactVerdict, RationalPoly, decide_monotone, exact_sum
from .sums import MonotonicityStatus, monotonicity_scan, sum_sequence, sum_value, sum_value_exact

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "AffineSum", "BlackBox", "Certificate", "DegreeLimitError", "DomainError",
    "ExactSumForm", "ExactVerdict", "FbFamily", "FourierSpec", "FunctionSpec", "GeneralizedNodes",
    "GrammarError", "MonotonicityStatus", "Negate", "ParameterError", "Polynomial", "RationalPoly",
    "Reflect", "RiemannMonoError", "ShapeReport", "Shifted", "TailBoundError", "VerificationMismatch",
    "audit", "certify", "decide_monotone", "exact_sum", "format_kind", "format_spec", "monotonicity_scan",
    "parse_kind", "parse_spec", "probe_shape", "reflect", "sum_sequence", "sum_value", "sum_value_exact",
    "symmetrize",
]
