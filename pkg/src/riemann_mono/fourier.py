"""Left and right sums from Fourier cosine coefficients.

For f continuous on (0, 1) with bounded variation and Fourier coefficients
a_0, a_k (cosine part), the sample average over the n-th roots of unity picks out
every n-th coefficient:

    L_n(f) - (f(0) - f(1)) / (2n) = R_n(f) + (f(0) - f(1)) / (2n) = a_0 + sum_k a_{nk}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import GrammarError, TailBoundError
from .funcspec import FourierSpec, FunctionSpec, evaluate
from .kinds import as_kind
from .sums import sum_value

MAX_TERMS = 1 << 20


@dataclass(frozen=True)
class CoefficientProvider:
    """a_0, k -> a_k and start -> bound on sum_{k >= start} |a_k|."""

    name: str
    a0: float
    ak: Callable[[int], float] = field(compare=False)
    tail_bound: Callable[[int], float] = field(compare=False)


_INV_FACT = tuple(float(Fraction(1, math.factorial(k))) for k in range(200))


def _inv_factorial(k: int) -> float:
    # 1/k! underflows to zero well before k = 200
    return _INV_FACT[k] if k < 200 else 0.0


def _expcos_tail(s: int) -> float:
    # sum_{k >= s} 1/k! <= (1/s!) (1 + 1/(s+1) + 1/(s+1)^2 + ...) = (s+1) / (s! s)
    if s <= 1:
        return math.e - 1.0 if s == 1 else math.e
    return math.exp(-math.lgamma(s + 1)) * (s + 1) / s


def expcos_provider() -> CoefficientProvider:
    return CoefficientProvider("expcos", 1.0, _inv_factorial, _expcos_tail)


def cosine_provider(m: int) -> CoefficientProvider:
    if m < 1:
        raise ValueError("cosine index must be >= 1")
    return CoefficientProvider(
        f"cos:{m}",
        0.0,
        lambda k: 1.0 if k == m else 0.0,
        lambda s: 1.0 if s <= m else 0.0,
    )


def constant_provider(c: float) -> CoefficientProvider:
    return CoefficientProvider(f"const:{c}", float(c), lambda k: 0.0, lambda s: 0.0)


def _expcos(x):
    w = np.exp(2j * np.pi * np.asarray(x, dtype=float))
    return np.real(np.exp(w))


def _expcos_prime(x):
    w = np.exp(2j * np.pi * np.asarray(x, dtype=float))
    return np.real(2j * np.pi * w * np.exp(w))


def _builtin(name: str) -> tuple[CoefficientProvider, FourierSpec]:
    if name == "expcos":
        prov = expcos_provider()
        spec = FourierSpec("expcos", prov, math.e, math.e, closed_form=_expcos, closed_derivative=_expcos_prime)
        return prov, spec
    head, _, arg = name.partition(":")
    if head == "cos" and arg:
        try:
            m = int(arg)
        except ValueError as exc:
            raise GrammarError(f"bad cosine index in {name!r}") from exc
        if m < 1:
            raise GrammarError(f"cosine index must be >= 1 in {name!r}")
        prov = cosine_provider(m)
        spec = FourierSpec(
            name, prov, 1.0, 1.0,
            closed_form=lambda x: np.cos(2 * np.pi * m * np.asarray(x, dtype=float)),
            closed_derivative=lambda x: -2 * np.pi * m * np.sin(2 * np.pi * m * np.asarray(x, dtype=float)),
        )
        return prov, spec
    if head == "const" and arg:
        try:
            c = float(Fraction(arg))
        except (ValueError, ZeroDivisionError) as exc:
            raise GrammarError(f"bad constant in {name!r}") from exc
        prov = constant_provider(c)
        spec = FourierSpec(
            f"const:{arg}", prov, c, c,
            closed_form=lambda x: np.full(np.shape(x), c),
            closed_derivative=lambda x: np.zeros(np.shape(x)),
        )
        return prov, spec
    raise GrammarError(f"unknown fourier builtin {name!r}; known: expcos, cos:<m>, const:<c>")


def builtin_provider(name: str) -> CoefficientProvider:
    return _builtin(name)[0]


def builtin_spec(name: str) -> FourierSpec:
    return _builtin(name)[1]


BUILTIN_NAMES = ("expcos", "cos:<m>", "const:<c>")


def trig_sum_exact(m: int, n: int, kind="left", wave: str = "cosine") -> float:
    """L_n = R_n of sin(2 pi m x) is 0; of cos(2 pi m x) it is 1 if n | m else 0."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if as_kind(kind).cli_name not in ("left", "right"):
        raise ValueError("only left and right sums are covered")
    if wave == "sine":
        return 0.0
    if wave == "cosine":
        return 1.0 if m % n == 0 else 0.0
    raise ValueError(f"wave must be sine or cosine, got {wave!r}")


def truncation_count(provider: CoefficientProvider, n: int, tol: float) -> int:
    """Smallest K with tail_bound(n K) <= tol; terms a_{n}, ..., a_{n(K-1)} are summed."""
    K = 1
    while provider.tail_bound(n * K) > tol:
        K *= 2
        if n * K > MAX_TERMS:
            raise TailBoundError(f"{provider.name}: tail bound stays above {tol} up to index {MAX_TERMS}")
    lo, hi = K // 2, K
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if provider.tail_bound(n * mid) > tol:
            lo = mid
        else:
            hi = mid
    return max(hi, 1)


def sum_from_coeffs(provider: CoefficientProvider, f0: float, f1: float, n: int, kind="right", tol: float = 1e-15) -> float:
    """L_n or R_n from a_0 + sum_k a_{nk} plus the boundary correction."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    name = as_kind(kind).cli_name
    K = truncation_count(provider, n, tol)
    series = math.fsum([provider.a0, *(provider.ak(n * k) for k in range(1, K))])
    edge = (f0 - f1) / (2 * n)
    if name == "right":
        return series - edge
    if name == "left":
        return series + edge
    raise ValueError("only left and right sums are covered")


def verify_identity(spec: FunctionSpec, provider: CoefficientProvider, n_max: int, tol: float = 1e-15) -> dict:
    """Residuals |sum_from_coeffs - direct sum| for n = 1..n_max, per kind."""
    f0 = float(evaluate(spec, 0.0))
    f1 = float(evaluate(spec, 1.0))
    out = {}
    for kind in ("left", "right"):
        out[kind] = [
            abs(sum_from_coeffs(provider, f0, f1, n, kind, tol) - sum_value(spec, kind, n))
            for n in range(1, n_max + 1)
        ]
    return out


def coefficients_monotone(provider: CoefficientProvider, horizon: int = 10_000, start: int = 1) -> tuple[bool, bool]:
    """(a_k nonincreasing, a_k nondecreasing) over start <= k <= horizon."""
    a = np.array([provider.ak(k) for k in range(start, horizon + 1)], dtype=float)
    d = np.diff(a)
    return bool(np.all(d <= 0)), bool(np.all(d >= 0))
