"""The family f_b(x) = 1 / (1 - b x + x^2).

Constants of the concavity classification, closed forms for R_x(f_1) and
L_n(f_2), the auxiliary inequalities used for the b = 1 case, the two
decompositions f_b = g + t * (reference function), and b-grid scans.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AccuracyError, DomainError, ParameterError, VerificationMismatch
from .funcspec import FbFamily
from .polyexact import RationalPoly, exact_sum
from .specfun import digamma, trigamma
from .sums import MonotonicityStatus, monotonicity_scan, sum_value

log = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------------------
# constants and the concavity classification


@dataclass(frozen=True)
class FbConstants:
    alpha: float
    gamma: float
    beta_minus: float
    beta_plus: float

    @property
    def alpha_residual(self) -> float:
        a = self.alpha
        return abs(a**3 - 3 * a**2 + 3)


def _alpha_bisect(tol: float = 1e-14) -> float:
    lo, hi = -1.0, -0.5
    g = lambda b: b**3 - 3 * b**2 + 3
    glo = g(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0:
            return mid
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def constants() -> FbConstants:
    s13 = math.sqrt(13.0)
    return FbConstants(
        alpha=_alpha_bisect(),
        gamma=1 + 2 * math.sin(math.pi / 18),
        beta_minus=(3 - s13) / 4,
        beta_plus=(3 + s13) / 4,
    )


CONSTANTS = constants()


def fb_second_derivative(b: float, x):
    x = np.asarray(x, dtype=float)
    q = 1 - b * x + x * x
    dq = 2 * x - b
    return (2 * dq * dq - 2 * q) / q**3


def sym_second_derivative(b: float, x):
    """Second derivative of the symmetrization (f_b(x) + f_b(1 - x)) / 2."""
    x = np.asarray(x, dtype=float)
    return 0.5 * (fb_second_derivative(b, x) + fb_second_derivative(b, 1 - x))


def taylor_h() -> RationalPoly:
    """Fourth-order Taylor polynomial of f_1 at 1/2: 4/3 - (4/9)(2x-1)^2 + (4/27)(2x-1)^4."""
    u = RationalPoly([-1, 2])
    return RationalPoly([Fraction(4, 3)]) - (u**2) * Fraction(4, 9) + (u**4) * Fraction(4, 27)


def h_second_derivative(x):
    x = np.asarray(x, dtype=float)
    return 32 * (8 * (x - 0.5) ** 2 - 1) / 9


def concavity_class(b: float, verify: bool = True, grid: int = 4001) -> str:
    """'convex', 'concave' or 'inflected' for the symmetrization of f_b.

    Convex for b <= alpha, concave on [beta-, 1] and [gamma, beta+], inflected
    elsewhere.  With ``verify`` the sign of the second derivative is sampled on
    a grid and a contradiction raises VerificationMismatch.
    """
    if not b < 2:
        raise ParameterError(f"f_b needs b < 2, got {b}")
    c = CONSTANTS
    if b <= c.alpha:
        cls = "convex"
    elif c.beta_minus <= b <= 1 or c.gamma <= b <= c.beta_plus:
        cls = "concave"
    else:
        cls = "inflected"
    if verify:
        s = sym_second_derivative(float(b), np.linspace(0.0, 1.0, grid))
        scale = max(1.0, float(np.max(np.abs(s))))
        tol = 1e-12 * scale
        has_pos, has_neg = bool(np.any(s > tol)), bool(np.any(s < -tol))
        ok = {"convex": not has_neg, "concave": not has_pos, "inflected": has_pos and has_neg}[cls]
        if not ok:
            raise VerificationMismatch(
                f"b = {b}: classified {cls} but second derivative ranges over [{s.min():.3e}, {s.max():.3e}]"
            )
    return cls


# ---------------------------------------------------------------------------
# closed forms

F2_METHOD = "digamma at the conjugate roots of k^2 + k x + x^2"


def f1_closed_form(x: float) -> float:
    """Continuous extension of R_x(f_1) = F_1(x) - F_2(x) for real x >= 1.

    F_1(x) = 2 pi sinh(sqrt3 pi x) / (sqrt3 (cosh(sqrt3 pi x) - cos(pi x)))
    F_2(x) = 1/x + 2x sum_{k>=1} 1/(k^2 + k x + x^2)
           = 1/x - (4/sqrt3) Im psi(1 + x/2 - i sqrt3 x/2)
    """
    if not x >= 1:
        raise DomainError(f"closed form needs x >= 1, got {x}")
    t = SQRT3 * math.pi * x
    c = (-1.0) ** int(x) if float(x).is_integer() else math.cos(math.pi * x)
    e1 = math.exp(-t)
    e2 = e1 * e1
    F1 = (2 * math.pi / SQRT3) * (1 - e2) / (1 + e2 - 2 * c * e1)
    z = complex(1 + x / 2, -SQRT3 * x / 2)
    F2 = 1 / x - (4 / SQRT3) * digamma(z).imag
    out = F1 - F2
    if not math.isfinite(out):
        raise AccuracyError(f"closed form not finite at x = {x}")
    return out


def f2_left_sum_closed(n: int) -> float:
    """L_n(f_2) = n sum_{j=1}^n 1/j^2 = n (pi^2/6 - psi_1(n+1))."""
    return n * (math.pi**2 / 6 - trigamma(n + 1.0))


def trigamma_identity_residuals(n_max: int = 1000) -> list[float]:
    # f_2(x) = 1/(1 - x)^2 is singular at x = 1, which left sums never sample.
    # 1 - 2x + x^2 cancels catastrophically near x = 1, so the node gap
    # 1 - k/n is formed exactly as (n - k)/n.
    out = []
    for n in range(1, n_max + 1):
        gap = (n - np.arange(n)) / n
        direct = math.fsum(1.0 / (gap * gap)) / n
        out.append(abs(direct - f2_left_sum_closed(n)))
    return out


# ---------------------------------------------------------------------------
# auxiliary inequalities


@dataclass
class InequalityResult:
    name: str
    min_margin: float
    argmin: float
    passed: bool


def _margins_exp_sinh_cosh(x: np.ndarray, a: float) -> np.ndarray:
    # e^x - a sinh x - cosh x, scaled by the positive factor e^{-x}
    e2 = np.exp(-2 * x)
    return 1 - (a * (1 - e2) + 1 + e2) / 2


def _margins_coth_upper(x: np.ndarray) -> np.ndarray:
    # 1/x + x/3 - coth x, with its Taylor series near 0 to avoid cancellation
    out = np.empty_like(x)
    small = x < 0.1
    xs = x[small]
    out[small] = xs**3 / 45 - 2 * xs**5 / 945 + xs**7 / 4725 - 2 * xs**9 / 93555
    xl = x[~small]
    out[~small] = 1 / xl + xl / 3 - 1 / np.tanh(xl)
    return out


def _margins_coth_csch(x: np.ndarray) -> np.ndarray:
    # e^{-x/3} - (x coth(x/2) - 2) csch^2(x/2); the bracket term tends to 2/3 at 0
    out = np.empty_like(x)
    zero = x == 0
    out[zero] = 1 - 2 / 3
    xp = x[~zero]
    h = xp / 2
    lhs = (xp / np.tanh(h) - 2) / np.sinh(h) ** 2
    out[~zero] = np.exp(-xp / 3) - lhs
    return out


def _margins_sinh_csch(x: np.ndarray) -> np.ndarray:
    # (sinh x - x) csch^2(x/2) - (2 - 2 e^{-x/3}); both sides vanish at 0
    out = np.empty_like(x)
    zero = x == 0
    out[zero] = 0.0
    xp = x[~zero]
    small = xp < 1e-2
    sx = np.where(small, xp**3 / 6 + xp**5 / 120 + xp**7 / 5040 + xp**9 / 362880, np.sinh(xp) - xp)
    out[~zero] = sx / np.sinh(xp / 2) ** 2 + 2 * np.expm1(-xp / 3)
    return out


def check_inequalities(grid_max: float = 50.0, step: float = 1e-3, tol: float = 1e-12) -> list[InequalityResult]:
    """Minimum margins of the four auxiliary inequalities on [0, grid_max]."""
    if not step > 0:
        raise DomainError("step must be positive")
    x = np.arange(0, int(round(grid_max / step)) + 1) * step
    rows = []
    for a in (0.0, 0.5, 1.0):
        rows.append((f"exp_sinh_cosh[alpha={a:g}]", x, _margins_exp_sinh_cosh(x, a)))
    xp = x[x > 0]
    rows.append(("coth_upper", xp, _margins_coth_upper(xp)))
    rows.append(("coth_csch_vs_exp", x, _margins_coth_csch(x)))
    rows.append(("sinh_csch_vs_exp", x, _margins_sinh_csch(x)))
    out = []
    for name, grid, m in rows:
        i = int(np.argmin(m))
        out.append(InequalityResult(name, float(m[i]), float(grid[i]), bool(m[i] >= -tol)))
    return out


# ---------------------------------------------------------------------------
# decompositions


def t_taylor(b):
    """(f_b(1) - f_b(1/2)) / (h(1) - h(1/2))."""
    return Fraction(27, 8) * (3 - 2 * b) / ((5 - 2 * b) * (2 - b))


def t_f1_reference(b):
    """(f_b(0) - f_b(1/2)) / (f_1(0) - f_1(1/2))."""
    return 3 * (2 * b - 1) / (5 - 2 * b)


def h_left_sum_closed(n) -> Fraction:
    n = Fraction(n)
    return Fraction(4, 27) * (Fraction(41, 5) - Fraction(2, 3) / n**2 - Fraction(8, 15) / n**4)


@dataclass
class CheckItem:
    name: str
    passed: bool
    margin: float
    detail: str = ""


def decomposition_checks(b, grid: int = 4001, tol: float = 1e-9) -> list[CheckItem]:
    """Check the pieces of the two decompositions f_b = g + t * reference at a given b."""
    items = []
    form = exact_sum(taylor_h(), "left")
    nsq = RationalPoly.monomial(2)
    # (4/27)(41/5 - 2/(3n^2) - 8/(15 n^4)) = (4/27)(41/5 n^4 - 2/3 n^2 - 8/15) / n^4
    num = RationalPoly([Fraction(-8, 15), 0, Fraction(-2, 3), 0, Fraction(41, 5)]) * Fraction(4, 27)
    same = form.equals_rational_function(num, nsq * nsq)
    items.append(CheckItem("taylor_h_left_sum", same, 0.0, str(form)))

    bq = Fraction(b) if not isinstance(b, float) else Fraction(b).limit_denominator(10**12)
    x = np.linspace(0.0, 1.0, grid)
    c = CONSTANTS
    if c.gamma <= float(b) <= 1.5:
        t = t_taylor(bq)
        items.append(CheckItem("t_taylor_nonnegative", t >= 0, float(t), f"t = {float(t):.12g}"))
        G = sym_second_derivative(float(b), x) - float(t) * h_second_derivative(x)
        m = float(np.max(G))
        items.append(CheckItem("taylor_G_concave", m <= tol, -m, "max of G'' on grid"))
    if 0.5 <= float(b) <= c.gamma:
        t = t_f1_reference(bq)
        items.append(CheckItem("t_f1_nonnegative", t >= 0, float(t), f"t = {float(t):.12g}"))
        G = sym_second_derivative(float(b), x) - float(t) * sym_second_derivative(1.0, x)
        if float(b) <= 1:
            m = float(np.max(G))
            items.append(CheckItem("f1_G_concave", m <= tol, -m, "max of G'' on grid"))
        if float(b) >= 1:
            m = float(np.min(G))
            items.append(CheckItem("f1_G_convex", m >= -tol, m, "min of G'' on grid"))
    return items


# ---------------------------------------------------------------------------
# scans


def left_right_sequences(b, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """L_n(f_b) and R_n(f_b) for n = 1..n_max sharing one evaluation per n."""
    bf = float(b)
    L = np.empty(n_max)
    R = np.empty(n_max)
    for n in range(1, n_max + 1):
        x = np.arange(n + 1) / n
        v = 1.0 / (1.0 - bf * x + x * x)
        L[n - 1] = math.fsum(v[:-1]) / n
        R[n - 1] = math.fsum(v[1:]) / n
    return L, R


@dataclass
class Witness:
    b: float
    kind: str
    n: int
    delta: float


@dataclass
class ScanReport:
    b_grid: list
    n_range: tuple
    tolerance: float
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def status(self, b, kind: str) -> MonotonicityStatus:
        return (self.left if kind == "left" else self.right)[b]

    def label(self, b, kind: str) -> str:
        st = self.status(b, kind)
        if st.direction == "none":
            return "none"
        return f"{st.direction} (no violation found to n={self.n_range[1]})"

    def rows(self):
        """(b, kind, direction, first_violation_n, first_violation_delta) in grid order."""
        for b in self.b_grid:
            for kind in ("left", "right"):
                st = self.status(b, kind)
                first = st.violations[0] if st.violations else (None, None)
                yield b, kind, st.direction, first[0], first[1]


def _scan_one(args):
    b, n_max, tol = args
    L, R = left_right_sequences(b, n_max)
    return monotonicity_scan(L, tol), monotonicity_scan(R, tol)


def resolve_workers(workers=None) -> int:
    """Worker count from the argument or RIEMANN_MONO_THREADS (0 means all cores)."""
    if workers is None:
        env = os.environ.get("RIEMANN_MONO_THREADS")
        if env is None or env.strip() == "":
            return 1
        workers = int(env)
    if workers <= 0:
        return os.cpu_count() or 1
    return workers


def b_grid(b_from: float, b_to: float, b_step: float) -> list[float]:
    if not b_step > 0:
        raise DomainError("b step must be positive")
    count = int(math.floor((b_to - b_from) / b_step + 1e-9)) + 1
    return [round(b_from + i * b_step, 12) for i in range(count)]


def scan(b_from=-2.0, b_to=1.99, b_step=0.01, n_max: int = 2000, tol: float = 1e-12,
         bs=None, workers=None) -> ScanReport:
    """Left and right monotonicity of f_b sums over a b grid, n = 1..n_max."""
    grid = list(bs) if bs is not None else b_grid(b_from, b_to, b_step)
    for b in grid:
        if not b < 2:
            raise ParameterError(f"f_b needs b < 2, got {b}")
    jobs = [(b, n_max, tol) for b in grid]
    nw = resolve_workers(workers)
    if nw > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=nw) as ex:
            results = list(ex.map(_scan_one, jobs))
    else:
        results = [_scan_one(j) for j in jobs]
    report = ScanReport(grid, (1, n_max), tol)
    for b, (sl, sr) in zip(grid, results):
        report.left[b] = sl
        report.right[b] = sr
        for kind, st in (("left", sl), ("right", sr)):
            if st.direction == "none":
                for n, d in st.rises[:1] + st.falls[:1]:
                    report.witnesses.append(Witness(b, kind, n, d))
    return report


def reverify_witness(w: Witness, tol: float) -> bool:
    """Recompute the difference from scratch through the generic sum evaluator."""
    spec = FbFamily(w.b)
    d = sum_value(spec, w.kind, w.n + 1) - sum_value(spec, w.kind, w.n)
    return abs(d) > tol and (d > 0) == (w.delta > 0)


# ---------------------------------------------------------------------------
# derivative of the continuous extension


@dataclass
class DerivativeReport:
    x_from: float
    x_to: float
    step: float
    bound_positive: bool
    min_inner_factor: float
    min_numeric_derivative: float
    argmin_derivative: float
    passed: bool


def f1_lower_bound_inner(x):
    x = np.asarray(x, dtype=float)
    return 4 * x**6 / (5 * (9 * x**2 + 3 * x + 1)) - 1


def f1_lower_bound(x):
    """(80 / e^{sqrt3 pi x}) (4 x^6 / (5 (9x^2 + 3x + 1)) - 1)."""
    x = np.asarray(x, dtype=float)
    return 80 * np.exp(-SQRT3 * np.pi * x) * f1_lower_bound_inner(x)


def f1_derivative_check(x_from: float = 2.0, x_to: float = 50.0, step: float = 0.01,
                        h: float = 1e-4, tol: float = 1e-8) -> DerivativeReport:
    """Positivity of the final lower bound and of a central-difference derivative of R_x(f_1)."""
    if not (2 <= x_from < x_to):
        raise DomainError("need 2 <= x_from < x_to")
    xs = np.arange(0, int(round((x_to - x_from) / step)) + 1) * step + x_from
    inner = f1_lower_bound_inner(xs)
    # the exponential prefactor is positive but underflows for large x, so the sign
    # of the bound is the sign of the rational factor
    bound_ok = bool(np.all(inner > 0))
    deriv = np.array([(f1_closed_form(x + h) - f1_closed_form(x - h)) / (2 * h) for x in xs])
    i = int(np.argmin(deriv))
    return DerivativeReport(
        x_from, x_to, step, bound_ok, float(inner.min()), float(deriv[i]), float(xs[i]),
        bound_ok and bool(deriv[i] >= -tol),
    )
