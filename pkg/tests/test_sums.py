import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_mono.corpus import builtin_corpus, symmetrized_corpus
from riemann_mono.errors import DomainError, ParameterError
from riemann_mono.funcspec import BlackBox, FbFamily, Polynomial, evaluate
from riemann_mono.kinds import GeneralizedNodes, NODE_BUILTINS, Shifted, parse_kind
from riemann_mono.sums import (
    monotonicity_scan, sequence_ns, sum_sequence, sum_value, sum_value_exact,
)
from conftest import poly_coeffs

CORPUS = builtin_corpus()
IDS = [t for t, _ in CORPUS]


@pytest.mark.parametrize("spec", [s for _, s in CORPUS], ids=IDS)
def test_structure_identities(spec):
    f0, f1 = float(evaluate(spec, 0.0)), float(evaluate(spec, 1.0))
    for n in (1, 2, 3, 7, 50):
        L, R = sum_value(spec, "left", n), sum_value(spec, "right", n)
        assert abs((R - L) - (f1 - f0) / n) <= 1e-12
        assert abs((L - (f0 - f1) / (2 * n)) - (R + (f0 - f1) / (2 * n))) <= 1e-12
        assert abs(sum_value(spec, "trapezium", n) - (L + R) / 2) <= 1e-12


@pytest.mark.parametrize("spec", [s for _, s in symmetrized_corpus()], ids=IDS)
def test_symmetrized_left_equals_right(spec):
    for n in (1, 2, 5, 40):
        assert abs(sum_value(spec, "left", n) - sum_value(spec, "right", n)) <= 1e-12


@given(poly_coeffs, st.integers(min_value=1, max_value=30))
def test_linear_nodes_reproduce_right(coeffs, n):
    p = Polynomial(tuple(coeffs))
    k = GeneralizedNodes(NODE_BUILTINS["linear"], "n", "right")
    assert sum_value_exact(p, k, n) == sum_value_exact(p, "right", n)


@given(poly_coeffs, st.integers(min_value=2, max_value=25),
       st.sampled_from(["left", "right", "central", "bilateral", "midpoint", "trapezium", "symmetric",
                        "shifted:1:left", "shifted:2:right", "nodes:square:n:left", "nodes:cube:an:right"]))
def test_float_sum_matches_exact(coeffs, n, kind):
    p = Polynomial(tuple(coeffs))
    exact = sum_value_exact(p, kind, n)
    scale = max(1.0, float(sum(abs(c) for c in coeffs)))
    assert abs(sum_value(p, kind, n) - float(exact)) <= 1e-12 * scale


def test_hand_values():
    x = Polynomial((0, 1))
    assert sum_value_exact(x, "left", 4) == Fraction(3, 8)
    assert sum_value_exact(x, "right", 4) == Fraction(5, 8)
    assert sum_value_exact(x, "midpoint", 4) == Fraction(1, 2)
    # central: (1/(n-1)) sum_{k=1}^{n-1} k/n = 1/2 ; bilateral: (1/(n+1)) sum_{k=0}^{n} k/n = 1/2
    assert sum_value_exact(x, "central", 5) == Fraction(1, 2)
    assert sum_value_exact(x, "bilateral", 5) == Fraction(1, 2)
    sq = Polynomial((0, 0, 1))
    # symmetric: average of left and right minus ... checked against its definition
    n = 3
    direct = (sum(Fraction(k, n) ** 2 for k in range(n + 1)) - Fraction(1, 4)) / n
    assert sum_value_exact(sq, "symmetric", n) == direct
    # shifted right, k=1: (1/n) sum_{i=2}^{n+1} f(i/(n+1))
    assert sum_value_exact(x, "shifted:1:right", 2) == (Fraction(2, 3) + Fraction(3, 3)) / 2


def test_anchor_values_f1():
    f1 = FbFamily(1)
    assert abs(sum_value(f1, "right", 1) - 1.0) <= 1e-14
    assert abs(sum_value(f1, "right", 2) - 7 / 6) <= 1e-14


def test_domain_checks():
    with pytest.raises(DomainError):
        sum_value(Polynomial((1,)), "central", 1)
    with pytest.raises((DomainError, ParameterError)):
        sum_value(Polynomial((1,)), "left", 0)


def test_sequence_helpers():
    assert list(sequence_ns("central", 1, 4)) == [2, 3, 4]
    arr = sum_sequence(FbFamily(1), "right", 1, 3)
    assert isinstance(arr, np.ndarray) and arr.shape == (3,)


def test_monotonicity_scan_semantics():
    inc = monotonicity_scan([1.0, 2.0, 2.0, 3.0])
    assert inc.direction == "increasing" and not inc.strict and not inc.violations
    dec = monotonicity_scan([3.0, 2.0, 1.0])
    assert dec.direction == "decreasing" and dec.strict
    mixed = monotonicity_scan([0.0, 1.0, 0.5, 2.0, 3.0], n_start=5)
    assert mixed.direction == "none" and mixed.mixed
    assert mixed.violations == [(6, -0.5)]
    # differences below tolerance are ignored
    flat = monotonicity_scan([1.0, 1.0 + 1e-14, 1.0], tolerance=1e-12)
    assert flat.direction == "increasing"


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=2, max_size=40))
def test_monotonicity_scan_properties(vals):
    st_ = monotonicity_scan(vals, 0.0)
    d = np.diff(vals)
    if st_.direction == "increasing":
        assert np.all(d >= 0)
    elif st_.direction == "decreasing":
        assert np.all(d <= 0) and np.any(d < 0)
    else:
        assert np.any(d > 0) and np.any(d < 0)


def test_node_validation():
    from riemann_mono.kinds import NodeSequence

    bad = GeneralizedNodes(NodeSequence("dup", lambda k: k // 2, True), "n", "right")
    with pytest.raises((DomainError, ParameterError)):
        sum_value(Polynomial((0, 1)), bad, 4)


def test_blackbox_sums():
    bb = BlackBox(lambda x: math.exp(-x), name="e")
    L = sum_value(bb, "left", 10)
    assert L == pytest.approx((1 - math.exp(-1)) / (10 * (1 - math.exp(-0.1))), rel=1e-14)
