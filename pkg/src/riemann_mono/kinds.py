"""Riemann-sum families.

Each kind is a small frozen value object; ``parse_kind`` / ``format_kind`` map to
the textual names used on the command line (``left``, ``shifted:2:right``,
``nodes:square:n:left`` ...).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import GrammarError, ParameterError

SIMPLE_NAMES = ("left", "right", "central", "bilateral", "midpoint", "trapezium", "symmetric")
SIDES = ("left", "right")
WEIGHTS = ("n", "an")


class SumKind:
    """Base class of all sum families."""

    @property
    def cli_name(self) -> str:
        return format_kind(self)

    def __str__(self) -> str:
        return self.cli_name


@dataclass(frozen=True)
class Simple(SumKind):
    name: str

    def __post_init__(self):
        if self.name not in SIMPLE_NAMES:
            raise ParameterError(f"unknown sum kind {self.name!r}")

    @property
    def min_n(self) -> int:
        return 2 if self.name == "central" else 1


LEFT = Simple("left")
RIGHT = Simple("right")
CENTRAL = Simple("central")
BILATERAL = Simple("bilateral")
MIDPOINT = Simple("midpoint")
TRAPEZIUM = Simple("trapezium")
SYMMETRIC = Simple("symmetric")


@dataclass(frozen=True)
class Shifted(SumKind):
    """(1/n) sum of f at i/(n+k): i = k+1..n+k (right) or i = 0..n-1 (left)."""

    k: int
    side: str

    def __post_init__(self):
        if self.k < 0:
            raise ParameterError("shift k must be nonnegative")
        if self.side not in SIDES:
            raise ParameterError(f"side must be left or right, got {self.side!r}")

    min_n = 1


@dataclass(frozen=True)
class NodeSequence:
    """a_0 = 0 and a_k = phi(k) for k >= 1, positive and increasing.

    ``exact`` optionally returns a_k as a Fraction so that the sequence conditions
    of the generalized-node rule can be checked without rounding.
    """

    name: str
    phi: Callable[[int], float] = field(compare=False)
    exact: Optional[Callable[[int], Fraction]] = field(default=None, compare=False)

    def __call__(self, k: int) -> float:
        return 0.0 if k == 0 else float(self.phi(k))

    def value_exact(self, k: int) -> Optional[Fraction]:
        if self.exact is None:
            return None
        return Fraction(0) if k == 0 else self.exact(k)


NODE_BUILTINS = {
    "linear": NodeSequence("linear", lambda k: float(k), lambda k: Fraction(k)),
    "square": NodeSequence("square", lambda k: float(k * k), lambda k: Fraction(k * k)),
    "cube": NodeSequence("cube", lambda k: float(k**3), lambda k: Fraction(k**3)),
    "sqrt": NodeSequence("sqrt", lambda k: math.sqrt(k)),
}


@dataclass(frozen=True)
class GeneralizedNodes(SumKind):
    """Sums over the nodes a_k/a_n with weight 1/n (``"n"``) or 1/a_n (``"an"``).

    Right side runs k = 1..n, left side k = 0..n-1.
    """

    nodes: NodeSequence
    weight: str
    side: str

    def __post_init__(self):
        if self.weight not in WEIGHTS:
            raise ParameterError(f"weight must be 'n' or 'an', got {self.weight!r}")
        if self.side not in SIDES:
            raise ParameterError(f"side must be left or right, got {self.side!r}")

    min_n = 1


def as_kind(kind) -> SumKind:
    if isinstance(kind, SumKind):
        return kind
    return parse_kind(str(kind))


def parse_kind(text: str) -> SumKind:
    text = text.strip().lower()
    if text in SIMPLE_NAMES:
        return Simple(text)
    parts = text.split(":")
    try:
        if parts[0] == "shifted" and len(parts) == 3:
            return Shifted(int(parts[1]), parts[2])
        if parts[0] == "nodes" and len(parts) == 4:
            if parts[1] not in NODE_BUILTINS:
                raise GrammarError(f"unknown node sequence {parts[1]!r}; known: {sorted(NODE_BUILTINS)}")
            return GeneralizedNodes(NODE_BUILTINS[parts[1]], parts[2], parts[3])
    except (ValueError, ParameterError) as exc:
        raise GrammarError(f"malformed sum kind {text!r}: {exc}") from exc
    raise GrammarError(f"unknown sum kind {text!r}")


def format_kind(kind: SumKind) -> str:
    if isinstance(kind, Simple):
        return kind.name
    if isinstance(kind, Shifted):
        return f"shifted:{kind.k}:{kind.side}"
    if isinstance(kind, GeneralizedNodes):
        return f"nodes:{kind.nodes.name}:{kind.weight}:{kind.side}"
    raise TypeError(f"not a sum kind: {kind!r}")


def min_n(kind: SumKind) -> int:
    return getattr(kind, "min_n", 1)
