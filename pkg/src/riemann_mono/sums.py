"""Riemann sums of every family and monotonicity scans of their sequences."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ParameterError
from .funcspec import FunctionSpec, eval_array, evaluate_exact
from .kinds import GeneralizedNodes, Shifted, Simple, SumKind, as_kind, min_n

log = logging.getLogger(__name__)


def _nodes_values(kind: GeneralizedNodes, n: int) -> np.ndarray:
    a = np.array([kind.nodes(k) for k in range(n + 1)], dtype=float)
    if np.any(np.diff(a) <= 0) or a[0] != 0.0:
        raise ParameterError(f"node sequence {kind.nodes.name} must have a_0 = 0 and increase strictly")
    return a


def sum_value(spec: FunctionSpec, kind, n: int) -> float:
    """Value of the Riemann sum of the given family at n, with compensated summation."""
    kind = as_kind(kind)
    if n < min_n(kind):
        raise DomainError(f"{kind} needs n >= {min_n(kind)}, got {n}")
    fsum = math.fsum
    if isinstance(kind, Simple):
        name = kind.name
        if name == "left":
            return fsum(eval_array(spec, np.arange(n) / n)) / n
        if name == "right":
            return fsum(eval_array(spec, np.arange(1, n + 1) / n)) / n
        if name == "central":
            return fsum(eval_array(spec, np.arange(1, n) / n)) / (n - 1)
        if name == "bilateral":
            return fsum(eval_array(spec, np.arange(n + 1) / n)) / (n + 1)
        if name == "midpoint":
            return fsum(eval_array(spec, (2 * np.arange(1, n + 1) - 1) / (2 * n))) / n
        if name == "trapezium":
            ends = eval_array(spec, np.array([0.0, 1.0]))
            inner = eval_array(spec, np.arange(1, n) / n)
            return fsum([ends[0] / 2, ends[1] / 2, *inner]) / n
        if name == "symmetric":
            vals = eval_array(spec, np.arange(n + 1) / n)
            mid = eval_array(spec, np.array([0.5]))[0]
            return fsum([*vals, -mid]) / n
    if isinstance(kind, Shifted):
        m = n + kind.k
        idx = np.arange(kind.k + 1, m + 1) if kind.side == "right" else np.arange(n)
        return fsum(eval_array(spec, idx / m)) / n
    if isinstance(kind, GeneralizedNodes):
        a = _nodes_values(kind, n)
        idx = np.arange(1, n + 1) if kind.side == "right" else np.arange(n)
        x = a[idx] / a[n]
        weight = n if kind.weight == "n" else a[n]
        return fsum(eval_array(spec, x)) / weight
    raise TypeError(f"unsupported sum kind {kind!r}")


def sum_value_exact(spec: FunctionSpec, kind, n: int) -> Optional[Fraction]:
    """Direct exact summation for specs with rational values at rational nodes."""
    kind = as_kind(kind)
    if n < min_n(kind):
        raise DomainError(f"{kind} needs n >= {min_n(kind)}, got {n}")

    def f(x):
        v = evaluate_exact(spec, x)
        if v is None:
            raise ValueError("spec has no exact evaluation")
        return v

    try:
        if isinstance(kind, Simple):
            name = kind.name
            if name == "left":
                return sum(f(Fraction(k, n)) for k in range(n)) / n
            if name == "right":
                return sum(f(Fraction(k, n)) for k in range(1, n + 1)) / n
            if name == "central":
                return sum(f(Fraction(k, n)) for k in range(1, n)) / (n - 1)
            if name == "bilateral":
                return sum(f(Fraction(k, n)) for k in range(n + 1)) / (n + 1)
            if name == "midpoint":
                return sum(f(Fraction(2 * k - 1, 2 * n)) for k in range(1, n + 1)) / n
            if name == "trapezium":
                inner = sum((f(Fraction(k, n)) for k in range(1, n)), Fraction(0))
                return (f(0) + f(1)) / (2 * n) + inner / n
            if name == "symmetric":
                return (sum(f(Fraction(k, n)) for k in range(n + 1)) - f(Fraction(1, 2))) / n
        if isinstance(kind, Shifted):
            m = n + kind.k
            rng = range(kind.k + 1, m + 1) if kind.side == "right" else range(n)
            return sum(f(Fraction(i, m)) for i in rng) / n
        if isinstance(kind, GeneralizedNodes):
            a = [kind.nodes.value_exact(k) for k in range(n + 1)]
            if any(v is None for v in a):
                return None
            rng = range(1, n + 1) if kind.side == "right" else range(n)
            w = n if kind.weight == "n" else a[n]
            return sum(f(a[k] / a[n]) for k in rng) / w
    except ValueError:
        return None
    raise TypeError(f"unsupported sum kind {kind!r}")


def sequence_ns(kind, n_from: int, n_to: int) -> range:
    kind = as_kind(kind)
    return range(max(n_from, min_n(kind)), n_to + 1)


def sum_sequence(spec: FunctionSpec, kind, n_from: int, n_to: int) -> np.ndarray:
    """Sums for n = n_from..n_to (central starts at n = 2)."""
    if not 1 <= n_from <= n_to:
        raise DomainError(f"need 1 <= n_from <= n_to, got {n_from}..{n_to}")
    kind = as_kind(kind)
    return np.array([sum_value(spec, kind, n) for n in sequence_ns(kind, n_from, n_to)])


@dataclass
class MonotonicityStatus:
    """Outcome of a tolerance-aware monotonicity scan.

    ``rises`` / ``falls`` list every (n, delta) with delta = s(n+1) - s(n)
    beyond the tolerance.  ``violations`` are the differences that break the
    reported direction; for direction "none" the shorter of the two lists.
    """

    direction: str
    strict: bool
    tolerance: float
    violations: list
    n_range: tuple
    rises: list = field(default_factory=list)
    falls: list = field(default_factory=list)

    @property
    def mixed(self) -> bool:
        return bool(self.rises) and bool(self.falls)

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "strict": self.strict,
            "tolerance": self.tolerance,
            "n_range": list(self.n_range),
            "violations": [[n, d] for n, d in self.violations],
            "rises": len(self.rises),
            "falls": len(self.falls),
        }


def monotonicity_scan(values: Sequence[float], tolerance: float = 1e-12, n_start: int = 1) -> MonotonicityStatus:
    """Classify a sequence s(n_start), s(n_start+1), ... as increasing, decreasing or none."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise DomainError("monotonicity scan needs at least two values")
    d = np.diff(v)
    ns = np.arange(n_start, n_start + d.size)
    rises = [(int(n), float(x)) for n, x in zip(ns, d) if x > tolerance]
    falls = [(int(n), float(x)) for n, x in zip(ns, d) if x < -tolerance]
    small = np.count_nonzero((d != 0) & (np.abs(d) <= tolerance))
    if small:
        log.debug("%d differences below tolerance %g suppressed", small, tolerance)
    n_range = (n_start, n_start + d.size)
    if not falls:
        return MonotonicityStatus("increasing", bool(np.all(d > 0)), tolerance, [], n_range, rises, falls)
    if not rises:
        return MonotonicityStatus("decreasing", bool(np.all(d < 0)), tolerance, [], n_range, rises, falls)
    violations = rises if len(rises) < len(falls) else falls
    return MonotonicityStatus("none", False, tolerance, violations, n_range, rises, falls)


def scan_spec(spec: FunctionSpec, kind, n_max: int, tolerance: float = 1e-12, n_from: int = 1) -> MonotonicityStatus:
    kind = as_kind(kind)
    ns = sequence_ns(kind, n_from, n_max)
    return monotonicity_scan(sum_sequence(spec, kind, ns.start, n_max), tolerance, ns.start)
