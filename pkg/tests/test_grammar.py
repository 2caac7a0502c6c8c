from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_mono.errors import GrammarError, ParameterError
from riemann_mono.funcspec import AffineSum, FbFamily, Negate, Polynomial, Reflect, eval_array
from riemann_mono.grammar import format_spec, parse_spec
from riemann_mono.kinds import (
    GeneralizedNodes, Shifted, Simple, format_kind, min_n, parse_kind,
)
from riemann_mono.corpus import CORPUS_TEXT
from conftest import poly_coeffs, small_fraction

XS = np.linspace(0, 1, 33)


def _same(a, b):
    return np.allclose(eval_array(a, XS), eval_array(b, XS), rtol=0, atol=1e-15)


@pytest.mark.parametrize("text", CORPUS_TEXT)
def test_corpus_round_trip(text):
    spec = parse_spec(text)
    again = parse_spec(format_spec(spec))
    assert format_spec(again) == format_spec(spec)
    assert _same(spec, again)


leaf = st.one_of(
    poly_coeffs.map(lambda c: Polynomial(tuple(c))),
    st.builds(FbFamily, st.sampled_from([Fraction(-2), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)])),
)
specs = st.recursive(
    leaf,
    lambda inner: st.one_of(
        st.builds(Reflect, inner),
        st.builds(Negate, inner),
        st.builds(AffineSum, small_fraction, inner, small_fraction, inner),
    ),
    max_leaves=4,
)


@given(specs)
def test_printed_specs_reparse(spec):
    text = format_spec(spec)
    again = parse_spec(text)
    assert format_spec(again) == text
    assert _same(spec, again)


@pytest.mark.parametrize("bad", ["", "poly:", "poly:1,x", "fb:", "reflect(poly:1", "sum(1,poly:1)", "sin:3", "neg)"])
def test_grammar_errors(bad):
    with pytest.raises(GrammarError):
        parse_spec(bad)


def test_domain_error_from_grammar():
    with pytest.raises(ParameterError):
        parse_spec("fb:2.5")


def test_ascending_coefficients():
    p = parse_spec("poly:0,1,0,-7,6")
    assert p.poly(Fraction(1, 2)) == Fraction(1, 2) - Fraction(7, 8) + Fraction(6, 16)


@pytest.mark.parametrize("text", [
    "left", "right", "central", "bilateral", "midpoint", "trapezium", "symmetric",
    "shifted:2:left", "shifted:1:right", "nodes:square:n:left", "nodes:linear:an:right",
])
def test_kind_round_trip(text):
    k = parse_kind(text)
    assert format_kind(k) == text
    assert parse_kind(format_kind(k)) == k


def test_kind_details():
    assert min_n(Simple("central")) == 2 and min_n(Simple("left")) == 1
    assert isinstance(parse_kind("shifted:3:right"), Shifted)
    assert isinstance(parse_kind("nodes:cube:n:left"), GeneralizedNodes)
    for bad in ("diagonal", "shifted:x:left", "shifted:1:up", "nodes:nope:n:left", "nodes:square:q:left"):
        with pytest.raises((GrammarError, ParameterError)):
            parse_kind(bad)
