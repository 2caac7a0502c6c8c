"""A fixed set of grammar-expressible specs used for cross-module consistency checks."""
from __future__ import annotations

from .funcspec import FunctionSpec, symmetrize
from .grammar import parse_spec

CORPUS_TEXT = (
    "poly:1",
    "poly:0,1",
    "poly:1,-1",
    "poly:0,0,1",
    "poly:1,-2,1",
    "poly:0,1,-1",
    "poly:1/4,-1,1",
    "poly:0,0,0,1",
    "poly:0,1,0,-7,6",
    "poly:0,3,-3,1",
    "poly:1,0,-3,2",
    "fb:-2",
    "fb:-1",
    "fb:0",
    "fb:1/2",
    "fb:3/4",
    "fb:1",
    "fb:6/5",
    "fb:3/2",
    "fb:8/5",
    "fourier:expcos",
    "fourier:cos:1",
    "fourier:cos:3",
    "fourier:const:2",
    "reflect(fb:0)",
    "neg(fb:1/2)",
    "sum(1,poly:0,0,1,1/2,fb:1)",
    "sum(1/2,fb:0,1/2,reflect(fb:0))",
)


def builtin_corpus() -> list[tuple[str, FunctionSpec]]:
    return [(t, parse_spec(t)) for t in CORPUS_TEXT]


def symmetrized_corpus() -> list[tuple[str, FunctionSpec]]:
    return [(f"sym[{t}]", symmetrize(s)) for t, s in builtin_corpus()]
