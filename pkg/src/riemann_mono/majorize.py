"""Weak supermajorization and the vector pair behind the L_n / R_n comparison.

For sorted-increasing x, y of equal length, y weakly supermajorizes x when every
prefix sum of x dominates the matching prefix sum of y.  By Hardy-Littlewood-Polya
this is equivalent to sum phi(x) <= sum phi(y) for every decreasing convex phi.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Optional, Sequence

import numpy as np

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class MajorizationInstance:
    x: tuple
    y: tuple

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError(f"length mismatch: {len(self.x)} vs {len(self.y)}")


def _exact(v: Sequence) -> bool:
    return all(isinstance(t, (int, Fraction)) for t in v)


def _prefix_gaps(x: Sequence, y: Sequence) -> list:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    px = accumulate(sorted(x))
    py = accumulate(sorted(y))
    return [a - b for a, b in zip(px, py)]


def first_failing_prefix(x: Sequence, y: Sequence) -> Optional[int]:
    """1-based index k of the first prefix with sum x_(k) < sum y_(k), or None."""
    tol = 0 if _exact(x) and _exact(y) else FLOAT_TOL
    for k, g in enumerate(_prefix_gaps(x, y), start=1):
        if g < -tol:
            return k
    return None


def weak_supermajorizes(x: Sequence, y: Sequence) -> bool:
    """True when y weakly supermajorizes x (increasing-order prefix sums of x >= those of y)."""
    return first_failing_prefix(x, y) is None


def majorizes(x: Sequence, y: Sequence) -> bool:
    """Weak supermajorization together with equal totals."""
    if not weak_supermajorizes(x, y):
        return False
    if _exact(x) and _exact(y):
        return sum(x) == sum(y)
    return abs(float(np.sum(x)) - float(np.sum(y))) <= FLOAT_TOL


def lemma_vectors(n: int) -> MajorizationInstance:
    """x: each j/n (j = 1..n) n+1 times; y: each j/(n+1) (j = 1..n+1) n times."""
    if n < 1:
        raise ValueError("n must be positive")
    x = tuple(Fraction(j, n) for j in range(1, n + 1) for _ in range(n + 1))
    y = tuple(Fraction(j, n + 1) for j in range(1, n + 2) for _ in range(n))
    return MajorizationInstance(x, y)


def case1_prefix(n: int, m: int, k: int) -> Fraction:
    """Closed form of the x prefix sum when m(n+1) <= k <= (m+1)n."""
    return Fraction(m + 1, n) * (k - Fraction(m * (n + 1), 2))


def case1_indices(n: int):
    """Pairs (m, k) covered by the closed form, k counted from 1."""
    for m in range(n + 1):
        for k in range(max(m * (n + 1), 1), (m + 1) * n + 1):
            yield m, k


def random_decreasing_convex(rng: np.random.Generator, lo: float, hi: float, breakpoints: int = 8):
    """Piecewise-linear phi on [lo, hi], slopes in [-2, 0] sorted increasing."""
    knots = np.sort(rng.uniform(lo, hi, breakpoints - 1))
    knots = np.concatenate(([lo], knots, [hi]))
    slopes = np.sort(rng.uniform(-2.0, 0.0, breakpoints))
    vals = np.concatenate(([0.0], np.cumsum(slopes * np.diff(knots))))

    def phi(t):
        return np.interp(t, knots, vals)

    return phi


def hlp_oracle(instance: MajorizationInstance, trials: int = 200, seed: int = 0) -> bool:
    """Check sum phi(x) <= sum phi(y) for random decreasing convex phi."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x = np.array([float(t) for t in instance.x])
    y = np.array([float(t) for t in instance.y])
    lo = float(min(x.min(), y.min()))
    hi = float(max(x.max(), y.max()))
    if hi == lo:
        hi = lo + 1.0
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(len(x)))
    for _ in range(trials):
        phi = random_decreasing_convex(rng, lo, hi)
        if float(np.sum(phi(x))) > float(np.sum(phi(y))) + FLOAT_TOL * scale:
            return False
    return True
