"""Digamma and trigamma by upward recurrence into the asymptotic regime."""
from __future__ import annotations

import cmath
import math

# B_2k / (2k) for the digamma tail and B_2k for the trigamma tail, k = 1..8
_B2K = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)
_ASYMPTOTIC_FROM = 20.0


def trigamma(x: float) -> float:
    """psi_1(x) = sum_{k >= 0} 1 / (x + k)^2 for x > 0."""
    if not x > 0:
        raise ValueError("trigamma is implemented for x > 0 only")
    head = []
    while x < _ASYMPTOTIC_FROM:
        head.append(1.0 / (x * x))
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # 1/x + 1/(2x^2) + sum B_2k / x^(2k+1), evaluated innermost first
    tail = 0.0
    for b in reversed(_B2K):
        tail = (tail + b) * inv2
    tail = inv + 0.5 * inv2 + tail * inv
    return math.fsum(head) + tail


def digamma(z: complex) -> complex:
    """psi(z) for complex z away from the poles 0, -1, -2, ..."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise ValueError(f"digamma has a pole at {z.real}")
    shift = 0j
    while z.real < _ASYMPTOTIC_FROM:
        shift -= 1 / z
        z += 1
    inv2 = 1 / (z * z)
    tail = 0j
    for k in range(len(_B2K), 0, -1):
        tail = (tail + _B2K[k - 1] / (2 * k)) * inv2
    return shift + cmath.log(z) - 0.5 / z - tail
