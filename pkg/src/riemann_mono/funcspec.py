"""Function model on [0, 1].

A spec is an immutable description of a real function: a rational polynomial,
a member of the family f_b(x) = 1/(1 - b x + x^2), a Fourier series given by its
coefficients, an opaque Python callable, or a combination of these.  Specs
evaluate pointwise (``evaluate``), on numpy grids (``eval_array``) and, when the
data allow it, exactly in rationals (``evaluate_exact``).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from .errors import DomainError, ParameterError
from .polyexact import RationalPoly, nonnegative_on, nonpositive_on

log = logging.getLogger(__name__)

Real = Union[int, float, Fraction]


class FunctionSpec:
    """Base class; concrete variants are frozen dataclasses below."""

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class Polynomial(FunctionSpec):
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", RationalPoly(self.coeffs).coeffs)

    @property
    def poly(self) -> RationalPoly:
        return RationalPoly(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: RationalPoly) -> "Polynomial":
        return cls(p.coeffs)


@dataclass(frozen=True)
class FbFamily(FunctionSpec):
    """f_b(x) = 1 / (1 - b x + x^2); finite on [0, 1] exactly when b < 2."""

    b: Real

    def __post_init__(self):
        if isinstance(self.b, str):
            object.__setattr__(self, "b", Fraction(self.b))
        if not self.b < 2:
            raise ParameterError(f"f_b needs b < 2, got b = {self.b}")


@dataclass(frozen=True)
class FourierSpec(FunctionSpec):
    """f(x) = a_0 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x) on (0, 1), with f(0), f(1) given.

    ``provider`` supplies a_0, a_k and a tail bound; ``sine`` likewise for b_k
    (None means all b_k vanish).  ``closed_form`` / ``closed_derivative`` are
    optional vectorized evaluators used instead of summing the series.
    """

    name: str
    provider: object = field(compare=False)
    f0: float = 0.0
    f1: float = 0.0
    sine: object = field(default=None, compare=False)
    closed_form: Optional[Callable] = field(default=None, compare=False)
    closed_derivative: Optional[Callable] = field(default=None, compare=False)


@dataclass(frozen=True)
class BlackBox(FunctionSpec):
    """An arbitrary callable; only reachable from Python, never from the CLI grammar."""

    evaluator: Callable[[float], float] = field(compare=False)
    name: str = "blackbox"
    derivative: Optional[Callable[[float], float]] = field(default=None, compare=False)
    vectorized: bool = False


@dataclass(frozen=True)
class Reflect(FunctionSpec):
    inner: FunctionSpec


@dataclass(frozen=True)
class Negate(FunctionSpec):
    inner: FunctionSpec


@dataclass(frozen=True)
class AffineSum(FunctionSpec):
    """c1 * inner1 + c2 * inner2."""

    c1: Real
    inner1: FunctionSpec
    c2: Real
    inner2: FunctionSpec


# ---------------------------------------------------------------------------
# evaluation


def _check_x(x):
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} outside [0, 1]")


def _fourier_series(spec: FourierSpec, x: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    prov = spec.provider
    K = _truncation_index(prov, tol)
    out = np.full_like(x, float(prov.a0), dtype=float)
    for k in range(1, K):
        out += float(prov.ak(k)) * np.cos(2 * np.pi * k * x)
    if spec.sine is not None:
        Ks = _truncation_index(spec.sine, tol)
        for k in range(1, Ks):
            out += float(spec.sine.ak(k)) * np.sin(2 * np.pi * k * x)
    return out


def _truncation_index(prov, tol: float, limit: int = 1 << 20) -> int:
    k = 1
    while prov.tail_bound(k) > tol:
        k *= 2
        if k > limit:
            raise ParameterError("coefficient tail bound does not reach the evaluation tolerance")
    lo, hi = k // 2, k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if prov.tail_bound(mid) > tol:
            lo = mid
        else:
            hi = mid
    return max(hi, 1)


def eval_array(spec: FunctionSpec, x) -> np.ndarray:
    """Vectorized float evaluation; x must lie in [0, 1]."""
    x = np.asarray(x, dtype=float)
    if isinstance(spec, Polynomial):
        out = np.zeros_like(x)
        for c in reversed(spec.coeffs):
            out = out * x + float(c)
        return out
    if isinstance(spec, FbFamily):
        return 1.0 / (1.0 - float(spec.b) * x + x * x)
    if isinstance(spec, FourierSpec):
        if spec.closed_form is not None:
            out = np.asarray(spec.closed_form(x), dtype=float)
        else:
            out = _fourier_series(spec, x)
        out = np.where(x == 0.0, spec.f0, out)
        return np.where(x == 1.0, spec.f1, out)
    if isinstance(spec, BlackBox):
        if spec.vectorized:
            return np.asarray(spec.evaluator(x), dtype=float)
        return np.array([float(spec.evaluator(float(t))) for t in x.ravel()]).reshape(x.shape)
    if isinstance(spec, Reflect):
        return eval_array(spec.inner, 1.0 - x)
    if isinstance(spec, Negate):
        return -eval_array(spec.inner, x)
    if isinstance(spec, AffineSum):
        return float(spec.c1) * eval_array(spec.inner1, x) + float(spec.c2) * eval_array(spec.inner2, x)
    raise TypeError(f"not a function spec: {spec!r}")


def evaluate_exact(spec: FunctionSpec, x) -> Optional[Fraction]:
    """Exact rational value when x and every parameter are rational, else None."""
    if isinstance(x, float):
        return None
    x = Fraction(x)
    _check_x(x)
    if isinstance(spec, Polynomial):
        return spec.poly(x)
    if isinstance(spec, FbFamily):
        if isinstance(spec.b, (int, Fraction)):
            return 1 / (1 - Fraction(spec.b) * x + x * x)
        return None
    if isinstance(spec, Reflect):
        return evaluate_exact(spec.inner, 1 - x)
    if isinstance(spec, Negate):
        v = evaluate_exact(spec.inner, x)
        return None if v is None else -v
    if isinstance(spec, AffineSum):
        if isinstance(spec.c1, float) or isinstance(spec.c2, float):
            return None
        a = evaluate_exact(spec.inner1, x)
        b = evaluate_exact(spec.inner2, x)
        if a is None or b is None:
            return None
        return Fraction(spec.c1) * a + Fraction(spec.c2) * b
    return None


def evaluate(spec: FunctionSpec, x):
    """f(x).  Returns a Fraction for a Polynomial at a rational x, else a float."""
    _check_x(x)
    if isinstance(spec, Polynomial) and isinstance(x, (int, Fraction)):
        return spec.poly(Fraction(x))
    if isinstance(spec, BlackBox) and not spec.vectorized:
        return float(spec.evaluator(float(x)))
    return float(eval_array(spec, np.array([float(x)]))[0])


# ---------------------------------------------------------------------------
# transformations


def reflect(spec: FunctionSpec) -> FunctionSpec:
    if isinstance(spec, Polynomial):
        return Polynomial.from_poly(spec.poly.compose(RationalPoly([1, -1])))
    return Reflect(spec)


def negate(spec: FunctionSpec) -> FunctionSpec:
    if isinstance(spec, Polynomial):
        return Polynomial.from_poly(-spec.poly)
    return Negate(spec)


def symmetrize(spec: FunctionSpec) -> FunctionSpec:
    """(f(x) + f(1 - x)) / 2, kept exact for polynomials."""
    if isinstance(spec, Polynomial):
        p = spec.poly
        return Polynomial.from_poly((p + p.compose(RationalPoly([1, -1]))) * Fraction(1, 2))
    half = Fraction(1, 2)
    return AffineSum(half, spec, half, Reflect(spec))


def is_structurally_symmetric(spec: FunctionSpec) -> bool:
    """True when the spec is symmetric about 1/2 by construction."""
    if isinstance(spec, Polynomial):
        p = spec.poly
        return p == p.compose(RationalPoly([1, -1]))
    if isinstance(spec, AffineSum):
        a, b = spec.inner1, spec.inner2
        if spec.c1 == spec.c2 and (b == Reflect(a) or a == Reflect(b)):
            return True
        return is_structurally_symmetric(a) and is_structurally_symmetric(b)
    if isinstance(spec, (Negate, Reflect)):
        return is_structurally_symmetric(spec.inner)
    return False


def derivative(spec: FunctionSpec) -> Optional[FunctionSpec]:
    """f' as a spec, or None when no analytic derivative is available."""
    if isinstance(spec, Polynomial):
        return Polynomial.from_poly(spec.poly.derivative())
    if isinstance(spec, FbFamily):
        b = float(spec.b)
        return BlackBox(
            lambda x: -(2 * x - b) / (1 - b * x + x * x) ** 2,
            name=f"d/dx fb:{spec.b}",
            vectorized=True,
        )
    if isinstance(spec, FourierSpec):
        if spec.closed_derivative is None:
            return None
        return BlackBox(spec.closed_derivative, name=f"d/dx {spec.name}", vectorized=True)
    if isinstance(spec, BlackBox):
        if spec.derivative is None:
            return None
        return BlackBox(spec.derivative, name=f"d/dx {spec.name}", vectorized=spec.vectorized)
    if isinstance(spec, Reflect):
        d = derivative(spec.inner)
        return None if d is None else Negate(Reflect(d))
    if isinstance(spec, Negate):
        d = derivative(spec.inner)
        return None if d is None else Negate(d)
    if isinstance(spec, AffineSum):
        d1, d2 = derivative(spec.inner1), derivative(spec.inner2)
        if d1 is None or d2 is None:
            return None
        return AffineSum(spec.c1, d1, spec.c2, d2)
    return None


def spec_name(spec: FunctionSpec) -> str:
    from .grammar import format_spec

    try:
        return format_spec(spec)
    except Exception:
        return getattr(spec, "name", type(spec).__name__)


# ---------------------------------------------------------------------------
# shape probing

DEFAULT_GRID = 512
DEFAULT_SHAPE_TOL = 1e-9


@dataclass(frozen=True)
class ShapeReport:
    """Monotonicity and convexity verdicts for f on [a, b].

    Both members of a pair may hold at once (constant or linear functions).
    ``exact`` is set when the verdicts come from exact root isolation on a
    polynomial rather than from grid differences.
    """

    increasing: bool
    decreasing: bool
    convex: bool
    concave: bool
    f0: float
    f_half: float
    f1: float
    grid_size: int
    tolerance: float
    exact: bool = False
    interval: tuple = (0.0, 1.0)

    @property
    def monotone_direction(self) -> str:
        if self.increasing and self.decreasing:
            return "constant"
        if self.increasing:
            return "increasing"
        if self.decreasing:
            return "decreasing"
        return "neither"

    @property
    def convexity(self) -> str:
        if self.convex and self.concave:
            return "linear"
        if self.convex:
            return "convex"
        if self.concave:
            return "concave"
        return "neither"

    @property
    def monotone(self) -> bool:
        return self.increasing or self.decreasing

    @property
    def constant(self) -> bool:
        return self.increasing and self.decreasing

    def to_dict(self) -> dict:
        return {
            "monotone_direction": self.monotone_direction,
            "convexity": self.convexity,
            "f0": self.f0,
            "f_half": self.f_half,
            "f1": self.f1,
            "grid_size": self.grid_size,
            "tolerance": self.tolerance,
            "exact": self.exact,
            "interval": list(self.interval),
        }


def probe_shape(
    spec: FunctionSpec,
    grid_size: int = DEFAULT_GRID,
    tolerance: float = DEFAULT_SHAPE_TOL,
    interval: tuple = (0, 1),
) -> ShapeReport:
    """Shape verdicts from first and second differences on a uniform grid.

    Polynomials are decided exactly instead: signs of p' and p'' on the interval.
    """
    if grid_size < 8:
        raise DomainError("grid size must be at least 8")
    a, b = interval
    fa, fh, fb_ = (float(evaluate(spec, t)) for t in (0.0, 0.5, 1.0))
    if isinstance(spec, Polynomial) and not isinstance(a, float) and not isinstance(b, float):
        p = spec.poly
        d1, d2 = p.derivative(), p.derivative().derivative()
        return ShapeReport(
            increasing=nonnegative_on(d1, a, b),
            decreasing=nonpositive_on(d1, a, b),
            convex=nonnegative_on(d2, a, b),
            concave=nonpositive_on(d2, a, b),
            f0=fa, f_half=fh, f1=fb_,
            grid_size=grid_size, tolerance=tolerance, exact=True, interval=(a, b),
        )
    xs = np.linspace(float(a), float(b), grid_size + 1)
    ys = eval_array(spec, xs)
    d1 = np.diff(ys)
    d2 = np.diff(ys, 2)
    return ShapeReport(
        increasing=bool(np.all(d1 >= -tolerance)),
        decreasing=bool(np.all(d1 <= tolerance)),
        convex=bool(np.all(d2 >= -tolerance)),
        concave=bool(np.all(d2 <= tolerance)),
        f0=fa, f_half=fh, f1=fb_,
        grid_size=grid_size, tolerance=tolerance, exact=False, interval=(a, b),
    )
