import math

import numpy as np
import pytest

from riemann_mono.errors import TailBoundError
from riemann_mono.fourier import (
    CoefficientProvider, builtin_provider, builtin_spec, coefficients_monotone, constant_provider,
    cosine_provider, expcos_provider, sum_from_coeffs, trig_sum_exact, truncation_count, verify_identity,
)
from riemann_mono.funcspec import BlackBox
from riemann_mono.sums import sum_value


def test_trig_sums_against_direct():
    worst = 0.0
    for m in range(1, 65):
        c = BlackBox(lambda x, m=m: np.cos(2 * np.pi * m * np.asarray(x)), vectorized=True)
        s = BlackBox(lambda x, m=m: np.sin(2 * np.pi * m * np.asarray(x)), vectorized=True)
        for n in range(1, 65):
            for kind in ("left", "right"):
                worst = max(worst, abs(trig_sum_exact(m, n, kind) - sum_value(c, kind, n)))
                worst = max(worst, abs(trig_sum_exact(m, n, kind, "sine") - sum_value(s, kind, n)))
    assert worst <= 1e-12


@pytest.mark.parametrize("name", ["expcos", "cos:1", "cos:4", "const:2"])
def test_identity_residuals(name):
    res = verify_identity(builtin_spec(name), builtin_provider(name), 50)
    assert max(res["left"]) <= 1e-12 and max(res["right"]) <= 1e-12


def test_expcos_values():
    p = expcos_provider()
    assert sum_from_coeffs(p, math.e, math.e, 1, "right") == pytest.approx(math.e, rel=1e-15)
    assert sum_from_coeffs(p, math.e, math.e, 2, "left") == pytest.approx(math.cosh(1), rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_boundary_term(n):
    p = expcos_provider()
    f0, f1 = 1.3, 0.4  # arbitrary endpoint values: the identity is algebraic
    L, R = sum_from_coeffs(p, f0, f1, n, "left"), sum_from_coeffs(p, f0, f1, n, "right")
    assert abs((L - R) - (f0 - f1) / n) <= 1e-15


@pytest.mark.parametrize("m", [1, 6, 12, 30])
def test_one_hot_divisibility(m):
    p = cosine_provider(m)
    for n in range(1, 40):
        v = sum_from_coeffs(p, 1.0, 1.0, n, "right")
        assert v == (1.0 if m % n == 0 else 0.0)


def test_coefficient_monotonicity():
    dec, inc = coefficients_monotone(expcos_provider(), 200)
    assert dec and not inc
    assert coefficients_monotone(constant_provider(2.0), 50) == (True, True)


def test_truncation_guard():
    slow = CoefficientProvider("slow", 0.0, lambda k: 1.0 / k, lambda k: 1.0)
    with pytest.raises(TailBoundError):
        truncation_count(slow, 1, 1e-15)
    assert truncation_count(expcos_provider(), 3, 1e-15) >= 1
