import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_mono.funcspec import BlackBox, Polynomial
from riemann_mono.majorize import (
    MajorizationInstance, case1_indices, case1_prefix, first_failing_prefix, hlp_oracle, lemma_vectors,
    majorizes, random_decreasing_convex, weak_supermajorizes,
)
from riemann_mono.sums import sum_value


def test_f1_reference_vectors_shape():
    inst = lemma_vectors(3)
    assert len(inst.x) == len(inst.y) == 12
    # totals (n+1)^2/2 and n(n+2)/2
    assert sum(inst.x) == 8 and sum(inst.y) == Fraction(15, 2)
    assert max(inst.x) == max(inst.y) == 1


@pytest.mark.parametrize("n", range(1, 61))
def test_weak_supermajorization(n):
    inst = lemma_vectors(n)
    assert weak_supermajorizes(inst.x, inst.y)
    assert first_failing_prefix(inst.x, inst.y) is None


@pytest.mark.parametrize("n", range(1, 31))
def test_case1_prefix_formula(n):
    xs = sorted(lemma_vectors(n).x)
    pref = [Fraction(0)]
    for t in xs:
        pref.append(pref[-1] + t)
    for m, k in case1_indices(n):
        assert pref[k] == case1_prefix(n, m, k)


def test_prefix_failure_reported():
    # the smallest entry of x is below that of y, so the first prefix already fails
    assert first_failing_prefix((Fraction(1), Fraction(3)), (Fraction(2), Fraction(2))) == 1
    assert not weak_supermajorizes((1, 3), (2, 2))
    assert majorizes((2, 2), (1, 3)) and majorizes((2, 2), (3, 1))
    assert not majorizes((2, 2), (1, 2))
    with pytest.raises(ValueError):
        MajorizationInstance((1,), (1, 2))


@pytest.mark.parametrize("n", range(1, 21))
def test_hlp_oracle_on_node_vectors(n):
    assert hlp_oracle(lemma_vectors(n), trials=200, seed=n)


@given(st.lists(st.integers(min_value=0, max_value=20), min_size=2, max_size=8),
       st.lists(st.integers(min_value=0, max_value=20), min_size=2, max_size=8))
def test_hlp_oracle_sound(a, b):
    m = min(len(a), len(b))
    x, y = [Fraction(v, 4) for v in a[:m]], [Fraction(v, 4) for v in b[:m]]
    if weak_supermajorizes(x, y):
        assert hlp_oracle(MajorizationInstance(tuple(x), tuple(y)), trials=30, seed=0)


def test_random_decreasing_convex_shape():
    rng = np.random.default_rng(0)
    phi = random_decreasing_convex(rng, 0.0, 1.0)
    t = np.linspace(0, 1, 201)
    v = phi(t)
    assert np.all(np.diff(v) <= 1e-12) and np.all(np.diff(v, 2) >= -1e-12)


@pytest.mark.parametrize("f", [Polynomial((1, -2, 1)), BlackBox(lambda x: math.exp(-x), name="e^-x")], ids=["sq", "exp"])
def test_right_sums_rise_for_convex_decreasing(f):
    vals = [sum_value(f, "right", n) for n in range(1, 62)]
    assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
