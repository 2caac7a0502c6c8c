from fractions import Fraction

import pytest

from riemann_mono.certify import (
    audit, boundary_values, certify, contradictions, find_inflection, g_transform_equivalence, rule_borwein_symmetrization,
    rule_fejer, rule_necessary, rule_symmetrization, symmetric_about_half,
)
from riemann_mono.corpus import builtin_corpus
from riemann_mono.funcspec import FbFamily, Polynomial, probe_shape, symmetrize
from riemann_mono.grammar import parse_spec


def _verdicts(certs, positive=True):
    return {(c.sum_kind, c.direction, c.rule_id) for c in certs if c.positive == positive and c.shift is None}


def test_fejer_on_decreasing_convex():
    certs = certify(Polynomial((1, -2, 1)), "right")
    assert ("right", "increasing", "fejer_szego_turan") in _verdicts(certs)
    assert all(c.soundness == "exact" for c in certs if c.rule_id == "fejer_szego_turan")


def test_fb0_left_via_symmetrization():
    certs = certify(FbFamily(0), "left")
    got = _verdicts(certs)
    assert ("left", "decreasing", "symmetrization") in got
    assert not any(r == "fejer_szego_turan" for _, _, r in got)  # f_0 has an inflection point


def test_expcos_fourier_certificates():
    spec = parse_spec("fourier:expcos")
    for kind in ("left", "right"):
        got = _verdicts(certify(spec, kind))
        assert (kind, "decreasing", "fourier") in got


def test_fb_conjecture_region_yields_no_left_claim():
    for b in ("3/4",):
        certs = certify(parse_spec(f"fb:{b}"), "left")
        assert not [c for c in certs if c.positive and c.shift is None]


def test_fb_8_5():
    spec = parse_spec("fb:8/5")
    assert ("left", "increasing") in {(k, d) for k, d, _ in _verdicts(certify(spec, "left"))}
    assert ("right", "decreasing") in {(k, d) for k, d, _ in _verdicts(certify(spec, "right"))}


def test_necessary_exclusions():
    excl = rule_necessary(probe_shape(Polynomial((0, 1))), "left")
    assert [c.direction for c in excl] == ["not_decreasing"]
    excl = rule_necessary(probe_shape(Polynomial((0, 1))), "right")
    assert [c.direction for c in excl] == ["not_increasing"]
    assert rule_necessary(probe_shape(FbFamily(1)), "left") == []  # not monotone


def test_shifted_certificate_carries_shift():
    certs = certify(Polynomial((1, -1)), "right")
    shifted = [c for c in certs if c.rule_id == "borwein_shifted"]
    assert shifted and all(c.shift is not None and "not S_n itself" in c.notes for c in shifted)


def test_inflection_finder():
    c, pattern = find_inflection(FbFamily(0))
    assert pattern == "concave-convex" and abs(c - 3 ** -0.5) <= 1e-6
    assert find_inflection(FbFamily(-1)) is None


def test_symmetry_detection():
    assert symmetric_about_half(symmetrize(FbFamily(0.3))) == (True, True)
    assert symmetric_about_half(FbFamily(1)) == (True, False)  # symmetric, seen only numerically
    assert not symmetric_about_half(FbFamily(0))[0]


def test_boundary_values_exact_for_polynomials():
    bv = boundary_values(Polynomial((0, 1, -1)))
    assert bv.f0 == 0 and bv.f_half == Fraction(1, 4) and bv.f1 == 0


CORPUS = builtin_corpus()


@pytest.mark.parametrize("text,spec", CORPUS, ids=[t for t, _ in CORPUS])
def test_subsumption(text, spec):
    for kind in ("left", "right"):
        older = {c.direction for c in rule_borwein_symmetrization(spec, kind)}
        newer = {c.direction for c in rule_symmetrization(spec, kind)}
        assert older <= newer


@pytest.mark.parametrize("b", [-1, 0, 0.5, 1])
def test_f1_reference_g_equivalence(b):
    g_ok, F_concave = g_transform_equivalence(FbFamily(b))
    assert g_ok == F_concave


@pytest.mark.parametrize("text", ["poly:0,1,-1", "fb:-1", "fb:3/2", "fourier:cos:1", "neg(fb:1/2)"])
def test_audit_and_exclusivity(text):
    spec = parse_spec(text)
    for kind in ("left", "right", "midpoint", "shifted:1:right"):
        certs = certify(spec, kind)
        assert all(r.ok for r in audit(spec, certs, 200, 1e-10))
        assert contradictions(certs) == []
