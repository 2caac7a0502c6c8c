"""Exact rational polynomial engine.

Closed forms of the uniform Riemann sums of a polynomial are obtained from
Faulhaber's formula and kept as ``N(n) / n**d`` with ``N`` a rational polynomial.
The sign of ``S(n+1) - S(n)`` over *all* integers is then decided with Sturm
sequences, entirely in ``fractions.Fraction`` arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DegreeLimitError
from .kinds import Simple, SumKind, as_kind

MAX_DEGREE = 64

Number = int | Fraction


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)
    raise TypeError(f"cannot make an exact rational from {c!r}")


class RationalPoly:
    """Polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RationalPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return RationalPoly(quot), RationalPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        """self(inner(x))."""
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, c) -> "RationalPoly":
        """p(x + c)."""
        return self.compose(RationalPoly([c, 1]))

    def monic(self) -> "RationalPoly":
        return self * (1 / self.lead) if self.coeffs else self

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.pretty("x")

    def pretty(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            cs = str(mag) if (mag != 1 or i == 0) else ""
            body = f"({cs})*{mono}" if cs and "/" in cs and mono else (f"{cs}*{mono}" if cs and mono else cs + mono)
            terms.append(("-" if c < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def _as_poly(p) -> RationalPoly:
    if isinstance(p, RationalPoly):
        return p
    return RationalPoly([p])


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return (p // g).monic() if g.degree > 0 else p.monic()


# ---------------------------------------------------------------------------
# Bernoulli numbers and Faulhaber


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m with the B_1 = -1/2 convention."""
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(m):
        acc += math.comb(m + 1, k) * bernoulli(k)
    return -acc / (m + 1)


@lru_cache(maxsize=None)
def faulhaber(p: int) -> RationalPoly:
    """S_p(n) = sum_{k=1}^n k^p as a polynomial in n of degree p+1."""
    if p < 0:
        raise ValueError("power must be nonnegative")
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        b = bernoulli(j)
        if j == 1:
            b = -b  # B_1^+ = +1/2 for sums ending at n
        coeffs[p + 1 - j] += Fraction(math.comb(p + 1, j)) * b / (p + 1)
    return RationalPoly(coeffs)


# ---------------------------------------------------------------------------
# closed forms of Riemann sums

EXACT_KINDS = ("left", "right", "central", "bilateral", "midpoint", "trapezium", "symmetric")


@dataclass(frozen=True)
class ExactSumForm:
    """The sum at n equals ``numerator(n) / n**denominator_power`` for n >= min_n."""

    numerator: RationalPoly
    denominator_power: int
    kind: str = "left"
    min_n: int = 1

    def __call__(self, n: int) -> Fraction:
        return self.numerator(Fraction(n)) / Fraction(n) ** self.denominator_power

    def __str__(self):
        return f"({self.numerator.pretty('n')}) / n^{self.denominator_power}"

    def equals_rational_function(self, num: RationalPoly, den: RationalPoly) -> bool:
        """True iff numerator/n^d == num/den as rational functions."""
        return self.numerator * den == num * RationalPoly.monomial(self.denominator_power)


def _kind_name(kind) -> str:
    k = as_kind(kind)
    if not isinstance(k, Simple):
        raise ValueError(f"no exact closed form for sum kind {k}")
    return k.name


def _check_degree(poly: RationalPoly):
    if poly.degree > MAX_DEGREE:
        raise DegreeLimitError(f"degree {poly.degree} exceeds the cap {MAX_DEGREE}")


def _left_power_sum(j: int) -> RationalPoly:
    # sum_{k=0}^{n-1} k^j, with 0^0 = 1
    if j == 0:
        return RationalPoly.x()
    return faulhaber(j).shift(-1)


def _upto_power_sum(j: int) -> RationalPoly:
    # sum_{k=0}^{n} k^j
    if j == 0:
        return RationalPoly([1, 1])
    return faulhaber(j)


def _inner_power_sum(j: int) -> RationalPoly:
    # sum_{k=1}^{n-1} k^j
    return faulhaber(j).shift(-1)


def _odd_power_sum(j: int) -> RationalPoly:
    # sum_{k=1}^{n} (2k-1)^j
    acc = RationalPoly()
    for i in range(j + 1):
        acc = acc + faulhaber(i) * (math.comb(j, i) * 2**i * (-1) ** (j - i))
    return acc


def exact_sum(poly: RationalPoly, kind) -> ExactSumForm:
    """Closed form of a uniform Riemann sum of ``poly`` as a rational function of n."""
    name = _kind_name(kind)
    _check_degree(poly)
    if poly.is_zero():
        return ExactSumForm(RationalPoly(), 0, name, 2 if name == "central" else 1)
    P = poly.degree
    n = RationalPoly.x()

    def weighted(power_sum, scale=lambda j: Fraction(1)) -> RationalPoly:
        acc = RationalPoly()
        for j, c in enumerate(poly.coeffs):
            if c:
                acc = acc + power_sum(j) * RationalPoly.monomial(P - j, c * scale(j))
        return acc

    if name == "left":
        num, d = weighted(_left_power_sum), P + 1
    elif name == "right":
        num, d = weighted(faulhaber), P + 1
    elif name == "central":
        q, r = divmod(weighted(_inner_power_sum), RationalPoly([-1, 1]))
        assert r.is_zero()
        num, d = q, P
    elif name == "bilateral":
        q, r = divmod(weighted(_upto_power_sum), RationalPoly([1, 1]))
        assert r.is_zero()
        num, d = q, P
    elif name == "midpoint":
        num, d = weighted(_odd_power_sum, lambda j: Fraction(1, 2**j)), P + 1
    elif name == "trapezium":
        ends = (poly(0) + poly(1)) / 2
        num, d = weighted(_inner_power_sum) + RationalPoly.monomial(P, ends), P + 1
    else:  # symmetric
        num, d = weighted(_upto_power_sum) - RationalPoly.monomial(P, poly(Fraction(1, 2))), P + 1
    # cancel common powers of n
    while d > 0 and num.coeffs and num.coeffs[0] == 0:
        num = RationalPoly(num.coeffs[1:])
        d -= 1
    if num.is_zero():
        d = 0
    return ExactSumForm(num, d, name, 2 if name == "central" else 1)


def difference_numerator(form: ExactSumForm) -> RationalPoly:
    """D(n) = N(n+1) n^d - N(n) (n+1)^d, so sign(S(n+1)-S(n)) = sign(D(n))."""
    d = form.denominator_power
    n = RationalPoly.x()
    return form.numerator.shift(1) * (n**d) - form.numerator * (RationalPoly([1, 1]) ** d)


# ---------------------------------------------------------------------------
# Sturm sequences and exact root isolation


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p.monic(), p.derivative().monic()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps sign variations and bounds coefficient growth
        seq.append(-r * (1 / abs(r.lead)))
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[RationalPoly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] (seq built from a squarefree polynomial)."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def root_bound(p: RationalPoly) -> Fraction:
    """Cauchy bound: every real root has |r| < bound."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_roots(p: RationalPoly, a, b, max_width=Fraction(1)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one distinct root of p in (a, b].

    Intervals are refined until width <= max_width and hi_i < lo_{i+1}.
    """
    a, b = _frac(a), _frac(b)
    sq = squarefree_part(p)
    if sq.degree <= 0:
        return []
    seq = sturm_sequence(sq)
    out: list[list[Fraction]] = []
    stack = [(a, b, count_roots(seq, a, b))]
    while stack:
        lo, hi, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append([lo, hi])
            continue
        mid = (lo + hi) / 2
        cl = count_roots(seq, lo, mid)
        stack.append((mid, hi, c - cl))
        stack.append((lo, mid, cl))
    out.sort()

    def halve(iv):
        lo, hi = iv
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) == 1:
            iv[1] = mid
        else:
            iv[0] = mid

    for iv in out:
        while iv[1] - iv[0] > max_width:
            halve(iv)
    changed = True
    while changed:
        changed = False
        for left, right in zip(out, out[1:]):
            if not left[1] < right[0]:
                halve(left)
                halve(right)
                changed = True
    return [(lo, hi) for lo, hi in out]


def sign_profile_on(p: RationalPoly, a, b) -> set[int]:
    """Set of signs p takes on [a, b] away from its roots (exact).

    One sample is taken in every root-free gap, so a sign absent from the
    result is absent on the whole interval.
    """
    a, b = _frac(a), _frac(b)
    if p.is_zero():
        return {0}
    if p.degree == 0:
        return {_sign(p.lead)}
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    ivs = [list(iv) for iv in isolate_roots(p, a, b, max_width=max((b - a) / 4, Fraction(1, 1 << 20)))]
    points = [(h1 + l2) / 2 for (_, h1), (l2, _) in zip(ivs, ivs[1:])]
    if p(a) != 0:
        points.append(a)
    elif ivs:
        lo, hi = ivs[0]
        while lo == a:  # the first root is > a, so this terminates
            mid = (lo + hi) / 2
            if count_roots(seq, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        points.append((a + lo) / 2)
    if p(b) != 0:
        points.append(b)
    if not points:
        points.append((a + b) / 2)
    return {_sign(p(t)) for t in points} - {0} or {0}


def nonnegative_on(p: RationalPoly, a=0, b=1) -> bool:
    return all(s >= 0 for s in sign_profile_on(p, a, b))


def nonpositive_on(p: RationalPoly, a=0, b=1) -> bool:
    return all(s <= 0 for s in sign_profile_on(p, a, b))


# ---------------------------------------------------------------------------
# monotonicity verdicts


@dataclass
class ExactVerdict:
    direction: str  # increasing | decreasing | both | neither
    proof: dict = field(default_factory=dict)
    valid_for_all_n: bool = True

    @property
    def increasing(self) -> bool:
        return self.direction in ("increasing", "both")

    @property
    def decreasing(self) -> bool:
        return self.direction in ("decreasing", "both")

    def to_dict(self) -> dict:
        return {"direction": self.direction, "valid_for_all_n": self.valid_for_all_n, "proof": self.proof}


def _direction(nonneg: bool, nonpos: bool) -> str:
    if nonneg and nonpos:
        return "both"
    if nonneg:
        return "increasing"
    if nonpos:
        return "decreasing"
    return "neither"


def decide_sign_on_integers(D: RationalPoly, n0: int = 1) -> tuple[str, dict]:
    """Decide whether D(n) >= 0 / <= 0 for every integer n >= n0."""
    if D.is_zero():
        return "both", {"D": [], "identically_zero": True, "n0": n0, "intervals": [], "signs": []}
    sq = squarefree_part(D)
    bound = max(root_bound(sq), Fraction(n0)) if sq.degree > 0 else Fraction(n0)
    ivs = isolate_roots(D, Fraction(n0), bound) if sq.degree > 0 else []
    tests = {n0, n0 + 1, math.floor(bound) + 1}
    for lo, hi in ivs:
        tests.update(range(max(n0, math.floor(lo)), math.ceil(hi) + 2))
    table = []
    for t in sorted(tests):
        v = D(Fraction(t))
        table.append((t, v, _sign(v)))
    signs = {s for _, _, s in table}
    # the leading coefficient fixes the sign beyond every root
    tail = _sign(D.lead)
    nonneg = all(s >= 0 for s in signs) and tail >= 0
    nonpos = all(s <= 0 for s in signs) and tail <= 0
    proof = {
        "D": [str(c) for c in D.coeffs],
        "n0": n0,
        "root_bound": str(bound),
        "intervals": [(str(lo), str(hi)) for lo, hi in ivs],
        "signs": [(t, str(v), s) for t, v, s in table],
        "tail_sign": tail,
    }
    return _direction(nonneg, nonpos), proof


def decide_monotone(poly: RationalPoly, kind) -> ExactVerdict:
    """Exact monotonicity of a polynomial's Riemann sums over all integers n >= min_n."""
    form = exact_sum(poly, kind)
    D = difference_numerator(form)
    direction, proof = decide_sign_on_integers(D, form.min_n)
    proof["kind"] = form.kind
    proof["closed_form"] = str(form)
    return ExactVerdict(direction, proof, True)


def recheck_proof(verdict: ExactVerdict) -> bool:
    """Re-evaluate every recorded sign of D and compare."""
    D = RationalPoly(Fraction(c) for c in verdict.proof.get("D", []))
    for t, v, s in verdict.proof.get("signs", []):
        val = D(Fraction(t))
        if val != Fraction(v) or _sign(val) != s:
            return False
    return True


def cubic_characterization(poly: RationalPoly, kind) -> ExactVerdict:
    """Left/right monotonicity of a polynomial of degree <= 3 from p(0), p(1/2), p(1)."""
    if poly.degree > 3:
        raise DegreeLimitError(f"cubic characterization needs degree <= 3, got {poly.degree}")
    name = _kind_name(kind)
    if name not in ("left", "right"):
        raise ValueError("cubic characterization covers left and right sums only")
    p0, ph, p1 = poly(Fraction(0)), poly(Fraction(1, 2)), poly(Fraction(1))
    anchor, other = (p0, p1) if name == "left" else (p1, p0)
    inc = anchor <= min(other, ph)
    dec = anchor >= max(other, ph)
    proof = {"kind": name, "p0": str(p0), "p_half": str(ph), "p1": str(p1)}
    return ExactVerdict(_direction(inc, dec), proof, True)
