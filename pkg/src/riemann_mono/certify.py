"""Monotonicity certificates from mechanically checked theorem hypotheses.

Every rule inspects one family of sums, checks the hypotheses of one known
monotonicity criterion against the function, and emits zero or more
``Certificate`` objects.  ``certify`` runs all rules that apply to a sum kind
and returns everything they produce, so overlapping criteria are all visible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .fourier import coefficients_monotone
from .funcspec import (
    DEFAULT_GRID,
    DEFAULT_SHAPE_TOL,
    BlackBox,
    FourierSpec,
    FunctionSpec,
    Polynomial,
    ShapeReport,
    derivative,
    eval_array,
    evaluate,
    evaluate_exact,
    is_structurally_symmetric,
    probe_shape,
    symmetrize,
)
from .kinds import GeneralizedNodes, Shifted, Simple, as_kind, format_kind
from .polyexact import RationalPoly, isolate_roots, nonnegative_on, nonpositive_on
from .sums import monotonicity_scan, sequence_ns, sum_value

POSITIVE = ("increasing", "decreasing")
NEGATIVE = ("not_increasing", "not_decreasing")
DEFAULT_HORIZON = 10_000
BOUNDARY_TOL = 1e-12
INFLECTION_RESOLUTION = 1e-6


@dataclass
class Hypothesis:
    name: str
    outcome: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "outcome": self.outcome, "detail": self.detail}


@dataclass
class Certificate:
    """A verdict on one sum family together with the checks that support it.

    When ``shift`` is set the verdict concerns S_n - shift / n rather than S_n.
    Directions ``not_increasing`` / ``not_decreasing`` are exclusions.
    """

    sum_kind: str
    direction: str
    rule_id: str
    hypotheses: list
    soundness: str
    notes: str = ""
    shift: Optional[float] = None

    @property
    def positive(self) -> bool:
        return self.direction in POSITIVE

    def to_dict(self) -> dict:
        d = {
            "sum_kind": self.sum_kind,
            "direction": self.direction,
            "rule_id": self.rule_id,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "soundness": self.soundness,
            "notes": self.notes,
        }
        if self.shift is not None:
            d["shift"] = self.shift
        return d


def _soundness(*exact_flags: bool) -> str:
    return "exact" if all(exact_flags) else "numeric"


def _shape_hyps(shape: ShapeReport, *names: str) -> list:
    how = "exact root isolation" if shape.exact else f"grid {shape.grid_size}, tol {shape.tolerance:g}"
    return [Hypothesis(f"f {n}", bool(getattr(shape, n)), how) for n in names]


# ---------------------------------------------------------------------------
# boundary comparisons


@dataclass(frozen=True)
class Boundary:
    f0: float
    f_half: float
    f1: float
    exact: bool
    q0: Optional[Fraction] = None
    q_half: Optional[Fraction] = None
    q1: Optional[Fraction] = None

    def ge(self, a: str, b: str) -> bool:
        """f(a) >= f(b) for a, b in {'0', 'half', '1'}."""
        if self.exact:
            return self._q(a) >= self._q(b)
        return self._f(a) >= self._f(b) - BOUNDARY_TOL

    def le(self, a: str, b: str) -> bool:
        return self.ge(b, a)

    def _q(self, k):
        return {"0": self.q0, "half": self.q_half, "1": self.q1}[k]

    def _f(self, k):
        return {"0": self.f0, "half": self.f_half, "1": self.f1}[k]


def boundary_values(spec: FunctionSpec) -> Boundary:
    qs = [evaluate_exact(spec, t) for t in (Fraction(0), Fraction(1, 2), Fraction(1))]
    fs = [float(evaluate(spec, t)) for t in (0.0, 0.5, 1.0)]
    if all(q is not None for q in qs):
        return Boundary(*fs, True, *qs)
    return Boundary(*fs, False)


# ---------------------------------------------------------------------------
# left / right rules


def rule_fejer(shape: ShapeReport, kind) -> list:
    """Monotone and convex-or-concave f: L_n moves with f, R_n against it."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    if not (shape.convex or shape.concave):
        return []
    hyps = _shape_hyps(shape, "increasing", "decreasing", "convex", "concave")
    out = []
    for mono, left_dir, right_dir in (("increasing", "increasing", "decreasing"), ("decreasing", "decreasing", "increasing")):
        if getattr(shape, mono):
            d = left_dir if kind.name == "left" else right_dir
            out.append(Certificate(kind.name, d, "fejer_szego_turan", hyps, _soundness(shape.exact),
                                   f"f {mono} and convex or concave"))
    return out


def rule_qi_shifted(shape: ShapeReport, kind) -> list:
    """Shifted sums (1/n) sum f(i/(n+k)): right side moves against f, left side with it."""
    kind = as_kind(kind)
    if not isinstance(kind, Shifted):
        return []
    if not (shape.convex or shape.concave):
        return []
    hyps = _shape_hyps(shape, "increasing", "decreasing", "convex", "concave")
    out = []
    for mono, left_dir, right_dir in (("increasing", "increasing", "decreasing"), ("decreasing", "decreasing", "increasing")):
        if getattr(shape, mono):
            d = left_dir if kind.side == "left" else right_dir
            out.append(Certificate(format_kind(kind), d, "qi_shifted", hyps, _soundness(shape.exact),
                                   f"monotone in n for k = {kind.k}; the same direction holds in k"))
    return out


def _node_sequences(kind: GeneralizedNodes, horizon: int):
    """a_1..a_{K+1} and the derived sequences, exact when the node sequence is."""
    K = horizon
    ex = kind.nodes.value_exact(1) is not None
    if ex:
        a = [kind.nodes.value_exact(k) for k in range(0, K + 2)]
    else:
        a = [kind.nodes(k) for k in range(0, K + 2)]
    ks = range(1, K + 1)
    A = {k: 1 - a[k] / a[k + 1] for k in ks}
    B = {k: a[k + 1] / a[k] - 1 for k in ks}
    seqs = {
        "kA_k": [k * A[k] for k in ks],
        "kB_k": [k * B[k] for k in ks],
        "a_kA_k": [a[k] * A[k] for k in ks],
        "a_{k+1}B_k": [a[k + 1] * B[k] for k in ks],
    }
    phi_convex = all(a[k + 1] - 2 * a[k] + a[k - 1] >= 0 for k in range(2, K + 1))
    positive_increasing = all(a[k] > a[k - 1] for k in range(1, K + 2)) and a[1] > 0
    return seqs, phi_convex, positive_increasing, ex


def _seq_monotone(s: list) -> tuple[bool, bool, Optional[int]]:
    inc = all(y >= x for x, y in zip(s, s[1:]))
    dec = all(y <= x for x, y in zip(s, s[1:]))
    first_bad = None
    if not (inc or dec):
        first_bad = next(i + 1 for i, (x, y) in enumerate(zip(s, s[1:])) if y < x)
    return inc, dec, first_bad


def rule_qi_guo_nodes(shape: ShapeReport, kind, horizon: int = DEFAULT_HORIZON) -> list:
    """Sums over nodes a_k / a_n for increasing f, with sequence conditions checked to a horizon."""
    kind = as_kind(kind)
    if not isinstance(kind, GeneralizedNodes):
        return []
    if not shape.increasing:
        return []
    seqs, phi_convex, pos_inc, exact_nodes = _node_sequences(kind, horizon)
    if not pos_inc:
        return []
    mono = {name: _seq_monotone(s)[:2] for name, s in seqs.items()}
    inc = {k: v[0] for k, v in mono.items()}
    dec = {k: v[1] for k, v in mono.items()}
    fmin_ok = _nonnegative(shape)
    base = _shape_hyps(shape, "increasing", "convex", "concave")
    hz = f"checked for 1 <= k <= {horizon}" + (" in exact arithmetic" if exact_nodes else "")
    name = format_kind(kind)
    out = []

    def emit(direction, branch, conds):
        hyps = base + [Hypothesis(n, o, hz) for n, o in conds]
        if all(o for _, o in conds):
            out.append(Certificate(name, direction, "qi_guo_nodes", hyps, "numeric",
                                   f"{branch}; sequence conditions verified to horizon K = {horizon} only"))

    if kind.weight == "n" and kind.side == "right":
        if shape.convex:
            emit("decreasing", "item 1, convex branch", [("kA_k increasing", inc["kA_k"])])
        if shape.concave:
            emit("decreasing", "item 1, concave branch", [("kB_k increasing", inc["kB_k"])])
    elif kind.weight == "n" and kind.side == "left":
        if shape.convex:
            emit("increasing", "item 2, convex branch", [("kB_k decreasing", dec["kB_k"])])
        if shape.concave:
            emit("increasing", "item 2, concave branch", [("kA_k decreasing", dec["kA_k"])])
    elif kind.weight == "an" and kind.side == "right":
        if shape.convex or shape.concave:
            emit("decreasing", "item 3", [("f nonnegative", fmin_ok), ("phi convex", phi_convex),
                                          ("a_kA_k increasing", inc["a_kA_k"])])
    else:
        if shape.convex:
            emit("increasing", "item 4, convex branch", [("f nonnegative", fmin_ok),
                                                         ("a_{k+1}B_k decreasing", dec["a_{k+1}B_k"])])
        if shape.concave:
            emit("increasing", "item 4, concave branch", [("f nonnegative", fmin_ok),
                                                          ("a_kA_k decreasing", dec["a_kA_k"])])
    return out


def _nonnegative(shape: ShapeReport) -> bool:
    # f increasing, so its minimum is f(0)
    return shape.f0 >= 0


def rule_bennett(shape: ShapeReport, derivative_shape: Optional[ShapeReport], kind) -> list:
    """Central / bilateral sums need convexity; midpoint / trapezium also need f' convex or concave."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("central", "bilateral", "midpoint", "trapezium")):
        return []
    name = kind.name
    hyps = _shape_hyps(shape, "convex", "concave")
    exact = shape.exact
    if name in ("midpoint", "trapezium"):
        if derivative_shape is None:
            return []
        ok = derivative_shape.convex or derivative_shape.concave
        how = "exact root isolation" if derivative_shape.exact else f"grid {derivative_shape.grid_size}"
        hyps = hyps + [Hypothesis("f' convex or concave", ok, how)]
        if not ok:
            return []
        exact = exact and derivative_shape.exact
    table = {
        "central": ("increasing", "decreasing"),
        "bilateral": ("decreasing", "increasing"),
        "midpoint": ("increasing", "decreasing"),
        "trapezium": ("decreasing", "increasing"),
    }
    out = []
    if shape.convex:
        out.append(Certificate(name, table[name][0], "bennett_jameson", hyps, _soundness(exact), "f convex"))
    if shape.concave:
        out.append(Certificate(name, table[name][1], "bennett_jameson", hyps, _soundness(exact), "f concave"))
    return out


def _second_diff(spec, x: float, h: float) -> float:
    v = eval_array(spec, np.array([x - h, x, x + h]))
    return float(v[0] - 2 * v[1] + v[2])


def find_inflection(spec: FunctionSpec, grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL,
                    resolution: float = INFLECTION_RESOLUTION):
    """Locate a single sign change of the second differences; returns (c, 'convex-concave' | 'concave-convex') or None."""
    xs = np.linspace(0.0, 1.0, grid + 1)
    d2 = np.diff(eval_array(spec, xs), 2)
    pos = d2 > tol
    neg = d2 < -tol
    if not pos.any() or not neg.any():
        return None
    if np.flatnonzero(pos).max() < np.flatnonzero(neg).min():
        pattern = "convex-concave"
        i, j = np.flatnonzero(pos).max(), np.flatnonzero(neg).min()
    elif np.flatnonzero(neg).max() < np.flatnonzero(pos).min():
        pattern = "concave-convex"
        i, j = np.flatnonzero(neg).max(), np.flatnonzero(pos).min()
    else:
        return None
    # d2[i] is centred at xs[i + 1]
    lo, hi = xs[i + 1], xs[j + 1]
    h = 1.0 / grid
    first_sign = 1 if pattern == "convex-concave" else -1
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        s = _second_diff(spec, mid, min(h, mid, 1 - mid))
        if s * first_sign > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), pattern


def _poly_inflection(p: RationalPoly):
    """Exact version: p'' has a single simple sign change in (0, 1)."""
    d2 = p.derivative().derivative()
    if d2.degree < 1:
        return None
    ivs = isolate_roots(d2, 0, 1, Fraction(1, 1 << 20))
    for lo, hi in ivs:
        if nonnegative_on(d2, 0, lo) and nonpositive_on(d2, hi, 1) and not nonpositive_on(d2, 0, lo):
            return (lo + hi) / 2, "convex-concave", (lo, hi)
        if nonpositive_on(d2, 0, lo) and nonnegative_on(d2, hi, 1) and not nonnegative_on(d2, 0, lo):
            return (lo + hi) / 2, "concave-convex", (lo, hi)
    return None


def rule_borwein_inflection(spec: FunctionSpec, kind, shape: Optional[ShapeReport] = None,
                            grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL) -> list:
    """Convex-then-concave decreasing f (or concave-then-convex increasing f) with inflection c."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    shape = shape or probe_shape(spec, grid, tol)
    if isinstance(spec, Polynomial):
        found = _poly_inflection(spec.poly)
        if found is None:
            return []
        c, pattern, (lo, hi) = found
        exact = shape.exact
        c_detail = f"p'' changes sign once, inside ({lo}, {hi}]"
        first_ok = second_ok = True
    else:
        found = find_inflection(spec, grid, tol)
        if found is None:
            return []
        c, pattern = found
        exact = False
        c_detail = f"c = {c:.7f} by bisection, resolution {INFLECTION_RESOLUTION:g}"
        left_part = probe_shape(spec, grid, tol, (0.0, float(c)))
        right_part = probe_shape(spec, grid, tol, (float(c), 1.0))
        if pattern == "convex-concave":
            first_ok, second_ok = left_part.convex, right_part.concave
        else:
            first_ok, second_ok = left_part.concave, right_part.convex
    if not (first_ok and second_ok):
        return []
    hyps = [Hypothesis(f"{pattern} split at c", True, c_detail)]
    if pattern == "convex-concave" and shape.decreasing:
        hyps += _shape_hyps(shape, "decreasing")
        d = "decreasing" if kind.name == "left" else "increasing"
    elif pattern == "concave-convex" and shape.increasing:
        hyps += _shape_hyps(shape, "increasing")
        d = "increasing" if kind.name == "left" else "decreasing"
    else:
        return []
    return [Certificate(kind.name, d, "borwein_inflection", hyps, _soundness(exact), f"inflection c ~ {float(c):.7f}")]


def _golden_extremum(spec, maximize: bool, tol: float = 1e-10) -> float:
    g = (math.sqrt(5) - 1) / 2
    sign = -1.0 if maximize else 1.0
    f = lambda t: sign * float(eval_array(spec, np.array([t]))[0])
    a, b = 0.0, 1.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    best = min((f(0.0), 0.0), (f(1.0), 1.0), (f(0.5 * (a + b)), 0.5 * (a + b)))
    return best[1]


def rule_borwein_shifted(spec: FunctionSpec, kind, shape: Optional[ShapeReport] = None,
                         grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL) -> list:
    """Concave f with maximum f(c): S_n - shift/n increasing; convex with minimum: decreasing.

    shift = f(c) - f(0) for right sums and f(c) - f(1) for left sums.
    """
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    shape = shape or probe_shape(spec, grid, tol)
    out = []
    anchor = 0.0 if kind.name == "right" else 1.0
    for flag, maximize, d in (("concave", True, "increasing"), ("convex", False, "decreasing")):
        if not getattr(shape, flag):
            continue
        c = _golden_extremum(spec, maximize)
        fc = float(evaluate(spec, c))
        shift = fc - float(evaluate(spec, anchor))
        hyps = _shape_hyps(shape, flag) + [
            Hypothesis("extremum located", True, f"c = {c:.9f}, f(c) = {fc:.17g} by golden section")
        ]
        out.append(Certificate(kind.name, d, "borwein_shifted", hyps, "numeric",
                               f"certifies S_n - {shift:.17g}/n, not S_n itself", shift=shift))
    return out


def symmetric_about_half(spec: FunctionSpec, grid: int = DEFAULT_GRID, tol: float = 1e-12) -> tuple[bool, bool]:
    """(symmetric, decided exactly or structurally)."""
    if is_structurally_symmetric(spec):
        return True, True
    xs = np.linspace(0.0, 1.0, grid + 1)
    v = eval_array(spec, xs)
    return bool(np.all(np.abs(v - v[::-1]) <= tol)), False


def rule_borwein_symmetric(spec: FunctionSpec, kind, grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL) -> list:
    """Symmetric f: lambda_n increasing when concave, decreasing when convex."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name == "symmetric"):
        return []
    sym, sym_exact = symmetric_about_half(spec, grid)
    if not sym:
        return []
    shape = probe_shape(spec, grid, tol)
    hyps = [Hypothesis("symmetric about 1/2", True, "by construction" if sym_exact else "grid check")]
    hyps += _shape_hyps(shape, "concave", "convex")
    out = []
    if shape.concave:
        out.append(Certificate("symmetric", "increasing", "borwein_symmetric", hyps,
                               _soundness(sym_exact, shape.exact), "f symmetric and concave"))
    if shape.convex:
        out.append(Certificate("symmetric", "decreasing", "borwein_symmetric", hyps,
                               _soundness(sym_exact, shape.exact), "f symmetric and convex"))
    return out


# the four symmetrization cases: (shape flag of the symmetrization, boundary relation,
# left direction, right direction)
_SYM_CASES = (
    ("concave", ("0", "ge", "half"), "decreasing", "increasing"),
    ("concave", ("1", "ge", "half"), "increasing", "decreasing"),
    ("convex", ("1", "le", "half"), "decreasing", "increasing"),
    ("convex", ("0", "le", "half"), "increasing", "decreasing"),
)

_LABEL = {"0": "f(0)", "half": "f(1/2)", "1": "f(1)"}


def _sym_inputs(spec, grid, tol):
    F = symmetrize(spec)
    return probe_shape(F, grid, tol), boundary_values(spec)


def rule_symmetrization(spec: FunctionSpec, kind, grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL,
                        _inputs=None) -> list:
    """Concave or convex symmetrization plus a boundary comparison fixes both L_n and R_n."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    Fshape, bd = _inputs or _sym_inputs(spec, grid, tol)
    out = []
    for flag, (a, rel, b), ldir, rdir in _SYM_CASES:
        if not getattr(Fshape, flag):
            continue
        holds = bd.ge(a, b) if rel == "ge" else bd.le(a, b)
        if not holds:
            continue
        hyps = [
            Hypothesis(f"symmetrization {flag}", True, "exact" if Fshape.exact else f"grid {Fshape.grid_size}"),
            Hypothesis(f"{_LABEL[a]} {'>=' if rel == 'ge' else '<='} {_LABEL[b]}", True,
                       "exact rationals" if bd.exact else f"floats, tol {BOUNDARY_TOL:g}"),
        ]
        d = ldir if kind.name == "left" else rdir
        out.append(Certificate(kind.name, d, "symmetrization", hyps, _soundness(Fshape.exact, bd.exact)))
    return out


def rule_borwein_symmetrization(spec: FunctionSpec, kind, grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL,
                                _inputs=None) -> list:
    """The earlier one-sided version: each case certifies only one of L_n, R_n."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    Fshape, bd = _inputs or _sym_inputs(spec, grid, tol)
    cases = (
        ("concave", ("0", "ge", "half"), "right", "increasing"),
        ("concave", ("1", "ge", "half"), "left", "increasing"),
        ("convex", ("0", "le", "half"), "right", "decreasing"),
        ("convex", ("1", "le", "half"), "left", "decreasing"),
    )
    out = []
    for flag, (a, rel, b), side, d in cases:
        if side != kind.name or not getattr(Fshape, flag):
            continue
        holds = bd.ge(a, b) if rel == "ge" else bd.le(a, b)
        if holds:
            hyps = [
                Hypothesis(f"symmetrization {flag}", True, "exact" if Fshape.exact else f"grid {Fshape.grid_size}"),
                Hypothesis(f"{_LABEL[a]} {'>=' if rel == 'ge' else '<='} {_LABEL[b]}", True,
                           "exact rationals" if bd.exact else f"floats, tol {BOUNDARY_TOL:g}"),
            ]
            out.append(Certificate(side, d, "borwein_symmetrization", hyps, _soundness(Fshape.exact, bd.exact)))
    return out


def rule_fourier(spec: FunctionSpec, kind, horizon: int = DEFAULT_HORIZON) -> list:
    """Monotone cosine coefficients plus a boundary comparison."""
    kind = as_kind(kind)
    if not isinstance(spec, FourierSpec) or not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    a_dec, a_inc = coefficients_monotone(spec.provider, horizon)
    f0, f1 = float(spec.f0), float(spec.f1)
    one_ge = f1 >= f0 - BOUNDARY_TOL
    zero_ge = f0 >= f1 - BOUNDARY_TOL
    cases = (
        (one_ge, a_dec, "right", "decreasing", "f(1) >= f(0)", "a_k decreasing"),
        (zero_ge, a_dec, "left", "decreasing", "f(0) >= f(1)", "a_k decreasing"),
        (zero_ge, a_inc, "right", "increasing", "f(0) >= f(1)", "a_k increasing"),
        (one_ge, a_inc, "left", "increasing", "f(1) >= f(0)", "a_k increasing"),
    )
    out = []
    for bnd, coef, side, d, bname, cname in cases:
        if side == kind.name and bnd and coef:
            hyps = [Hypothesis(bname, True, f"floats, tol {BOUNDARY_TOL:g}"),
                    Hypothesis(cname, True, f"checked for 1 <= k <= {horizon}")]
            out.append(Certificate(side, d, "fourier", hyps, "numeric",
                                   "assumes f continuous and of bounded variation"))
    return out


def rule_necessary(shape: ShapeReport, kind) -> list:
    """Non-constant monotone f: R_n cannot move with f and L_n cannot move against it."""
    kind = as_kind(kind)
    if not (isinstance(kind, Simple) and kind.name in ("left", "right")):
        return []
    if shape.constant or not shape.monotone:
        return []
    hyps = _shape_hyps(shape, "increasing", "decreasing")
    if shape.increasing:
        d = "not_increasing" if kind.name == "right" else "not_decreasing"
    else:
        d = "not_decreasing" if kind.name == "right" else "not_increasing"
    return [Certificate(kind.name, d, "necessary", hyps, _soundness(shape.exact), "f monotone and not constant")]


# ---------------------------------------------------------------------------
# aggregation


def certify(spec: FunctionSpec, kind, grid: int = DEFAULT_GRID, tol: float = DEFAULT_SHAPE_TOL,
            horizon: int = DEFAULT_HORIZON) -> list:
    """Run every rule that applies to the sum kind and return all certificates."""
    kind = as_kind(kind)
    shape = probe_shape(spec, grid, tol)
    out = []
    if isinstance(kind, Simple):
        if kind.name in ("left", "right"):
            inputs = _sym_inputs(spec, grid, tol)
            out += rule_fejer(shape, kind)
            out += rule_borwein_inflection(spec, kind, shape, grid, tol)
            out += rule_borwein_shifted(spec, kind, shape, grid, tol)
            out += rule_borwein_symmetrization(spec, kind, grid, tol, inputs)
            out += rule_symmetrization(spec, kind, grid, tol, inputs)
            out += rule_fourier(spec, kind, horizon)
            out += rule_necessary(shape, kind)
        elif kind.name == "symmetric":
            out += rule_borwein_symmetric(spec, kind, grid, tol)
        else:
            dspec = derivative(spec) if kind.name in ("midpoint", "trapezium") else None
            dshape = probe_shape(dspec, grid, tol) if dspec is not None else None
            out += rule_bennett(shape, dshape, kind)
    elif isinstance(kind, Shifted):
        out += rule_qi_shifted(shape, kind)
    elif isinstance(kind, GeneralizedNodes):
        out += rule_qi_guo_nodes(shape, kind, horizon)
    return out


def certified_values(spec: FunctionSpec, cert: Certificate, n_max: int, n_from: int = 1) -> tuple[range, np.ndarray]:
    """The sequence a certificate speaks about, for n = n_from..n_max."""
    kind = as_kind(cert.sum_kind)
    ns = sequence_ns(kind, n_from, n_max)
    vals = np.array([sum_value(spec, kind, n) for n in ns])
    if cert.shift is not None:
        vals = vals - cert.shift / np.array(ns, dtype=float)
    return ns, vals


@dataclass
class AuditRow:
    certificate: Certificate
    observed: str
    ok: bool
    worst: float


def audit(spec: FunctionSpec, certs: list, n_max: int = 500, tol: float = 1e-10) -> list:
    """Scan every positive certificate's sequence and report whether it holds within tol."""
    rows = []
    cache = {}
    for c in certs:
        if not c.positive:
            continue
        key = (c.sum_kind, c.shift)
        if key not in cache:
            ns, vals = certified_values(spec, c, n_max)
            cache[key] = (ns, vals)
        ns, vals = cache[key]
        st = monotonicity_scan(vals, tol, ns.start)
        d = np.diff(vals)
        if c.direction == "increasing":
            ok, worst = not st.falls, float(d.min())
        else:
            ok, worst = not st.rises, float(-d.max())
        rows.append(AuditRow(c, st.direction, ok, worst))
    return rows


def contradictions(certs: list) -> list:
    """Pairs (positive, exclusion) on the same sum kind that contradict each other."""
    bad = []
    for p in certs:
        if not p.positive or p.shift is not None:
            continue
        for q in certs:
            if q.direction == "not_" + p.direction and q.sum_kind == p.sum_kind:
                bad.append((p, q))
    return bad


# ---------------------------------------------------------------------------
# the auxiliary function g = 0 on [0, 1/2], 2F - 2f(1/2) on [1/2, 1]


def g_transform_spec(spec: FunctionSpec) -> BlackBox:
    F = symmetrize(spec)
    fh = float(evaluate(spec, 0.5))

    def g(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.5, 0.0, 2 * eval_array(F, x) - 2 * fh)

    return BlackBox(g, name="g_transform", vectorized=True)


def g_transform_equivalence(spec: FunctionSpec, grid: int = 1024, tol: float = DEFAULT_SHAPE_TOL) -> tuple[bool, bool]:
    """(g concave and decreasing, symmetrization concave), both from grid probes."""
    gshape = probe_shape(g_transform_spec(spec), grid, tol)
    Fshape = probe_shape(symmetrize(spec), grid, tol)
    return gshape.concave and gshape.decreasing, Fshape.concave
