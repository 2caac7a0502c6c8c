import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_mono.errors import DomainError, ParameterError
from riemann_mono.funcspec import (
    AffineSum, BlackBox, FbFamily, Negate, Polynomial, Reflect, derivative, eval_array, evaluate,
    evaluate_exact, is_structurally_symmetric, negate, probe_shape, reflect, symmetrize,
)
from riemann_mono.corpus import builtin_corpus
from conftest import poly_coeffs, unit_float

CORPUS = builtin_corpus()
SPEC_IDS = [t for t, _ in CORPUS]
SPECS = [s for _, s in CORPUS]


@pytest.mark.parametrize("spec", SPECS, ids=SPEC_IDS)
def test_double_reflect_is_identity(spec):
    xs = np.random.default_rng(1).random(100)
    rr = Reflect(Reflect(spec))
    assert np.max(np.abs(eval_array(rr, xs) - eval_array(spec, xs))) <= 1e-15


@pytest.mark.parametrize("spec", SPECS, ids=SPEC_IDS)
def test_symmetrize_is_symmetric(spec):
    xs = np.linspace(0, 1, 513)
    F = symmetrize(spec)
    assert np.max(np.abs(eval_array(F, xs) - eval_array(F, 1 - xs))) <= 1e-14


@pytest.mark.parametrize("spec", SPECS, ids=SPEC_IDS)
def test_negate_swaps_shape(spec):
    a, b = probe_shape(spec), probe_shape(Negate(spec))
    assert (a.increasing, a.decreasing, a.convex, a.concave) == (b.decreasing, b.increasing, b.concave, b.convex)


@given(poly_coeffs, st.lists(unit_float, min_size=1, max_size=20))
def test_polynomial_float_matches_exact(coeffs, xs):
    p = Polynomial(tuple(coeffs))
    for x in xs:
        exact = p.poly(Fraction(x))
        approx = float(eval_array(p, np.array([x]))[0])
        scale = max(1.0, float(sum(abs(c) for c in coeffs)))
        assert abs(approx - float(exact)) <= 1e-12 * scale


@given(poly_coeffs)
def test_exact_reflect_and_negate_for_polynomials(coeffs):
    p = Polynomial(tuple(coeffs))
    r, n = reflect(p), negate(p)
    assert isinstance(r, Polynomial) and isinstance(n, Polynomial)
    for x in (Fraction(0), Fraction(1, 3), Fraction(1)):
        assert r.poly(x) == p.poly(1 - x)
        assert n.poly(x) == -p.poly(x)
    assert is_structurally_symmetric(symmetrize(p))


def test_fb_values_and_domain():
    f1 = FbFamily(1)
    assert evaluate(f1, 0.0) == 1.0
    assert math.isclose(evaluate(f1, 0.5), 4 / 3)
    assert evaluate_exact(FbFamily(Fraction(1, 2)), Fraction(1, 2)) == Fraction(1, 1 - Fraction(1, 4) + Fraction(1, 4))
    assert FbFamily("3/4").b == Fraction(3, 4)
    with pytest.raises(ParameterError):
        FbFamily(2)
    with pytest.raises(ParameterError):
        FbFamily(2.5)


def test_domain_guard():
    with pytest.raises(DomainError):
        evaluate(Polynomial((1,)), 1.5)
    with pytest.raises(DomainError):
        probe_shape(Polynomial((0, 1)), grid_size=4)


def test_polynomial_shape_is_exact():
    s = probe_shape(Polynomial((0, 1, -1)))
    assert s.exact and s.concave and not s.convex and not s.monotone
    lin = probe_shape(Polynomial((1, -1)))
    assert lin.convexity == "linear" and lin.monotone_direction == "decreasing"
    const = probe_shape(Polynomial((3,)))
    assert const.monotone_direction == "constant"


def test_fb_shape_grid():
    s = probe_shape(FbFamily(-1))  # 1/(1+x+x^2): decreasing and convex
    assert s.decreasing and not s.increasing and s.convex
    s0 = probe_shape(FbFamily(0))  # inflection at 1/sqrt(3)
    assert s0.decreasing and not s0.convex and not s0.concave


def test_affine_sum_and_blackbox():
    sq = Polynomial((0, 0, 1))
    s = AffineSum(Fraction(2), sq, Fraction(-1), Polynomial((1,)))
    assert evaluate(s, 0.5) == pytest.approx(2 * 0.25 - 1)
    bb = BlackBox(lambda x: math.exp(-x), name="expneg")
    assert evaluate(bb, 0.0) == 1.0
    assert probe_shape(bb).decreasing


def test_derivative_specs():
    d = derivative(Polynomial((1, 2, 3)))
    assert isinstance(d, Polynomial) and d.poly(Fraction(1)) == 8
    dfb = derivative(FbFamily(1))
    # f_1'(x) = (1 - 2x) / (1 - x + x^2)^2
    for x in (0.1, 0.5, 0.9):
        assert evaluate(dfb, x) == pytest.approx((1 - 2 * x) / (1 - x + x * x) ** 2, rel=1e-13)
