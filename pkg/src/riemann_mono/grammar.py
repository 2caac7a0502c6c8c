"""Text form of function specs.

    poly:c0,c1,...            ascending coefficients, each p/q or a decimal
    fb:<b>                    1 / (1 - b x + x^2)
    fourier:<builtin>         expcos, cos:<m>, const:<c>
    reflect(<spec>)           x -> spec(1 - x)
    neg(<spec>)               -spec
    sum(c1,<spec1>,c2,<spec2>)
"""
from __future__ import annotations

from fractions import Fraction

from .errors import GrammarError
from .funcspec import AffineSum, BlackBox, FbFamily, FourierSpec, FunctionSpec, Negate, Polynomial, Reflect


def _number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise GrammarError(f"not a rational number: {text!r}") from exc


def _is_number(text: str) -> bool:
    try:
        Fraction(text.strip())
        return True
    except (ValueError, ZeroDivisionError):
        return False


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GrammarError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GrammarError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def _call_body(text: str, name: str) -> str:
    if not text.endswith(")"):
        raise GrammarError(f"missing closing parenthesis in {text!r}")
    return text[len(name) + 1 : -1]


def parse_spec(text: str) -> FunctionSpec:
    text = text.strip().replace(" ", "")
    if not text:
        raise GrammarError("empty function spec")
    if text.startswith("poly:"):
        body = text[5:]
        if not body:
            raise GrammarError("poly: needs at least one coefficient")
        return Polynomial(tuple(_number(c) for c in body.split(",")))
    if text.startswith("fb:"):
        return FbFamily(_number(text[3:]))
    if text.startswith("fourier:"):
        from .fourier import builtin_spec

        return builtin_spec(text[8:])
    if text.startswith("reflect("):
        return Reflect(parse_spec(_call_body(text, "reflect")))
    if text.startswith("neg("):
        return Negate(parse_spec(_call_body(text, "neg")))
    if text.startswith("sum("):
        items = _split_top(_call_body(text, "sum"))
        starts = [i for i, it in enumerate(items) if not _is_number(it)]
        if len(starts) < 2 or starts[0] != 1 or starts[1] < 3:
            raise GrammarError(f"sum needs (c1,spec1,c2,spec2), got {text!r}")
        # spec2 may itself contain top-level commas only if it is a polynomial
        s2 = starts[1]
        c1 = _number(items[0])
        spec1 = parse_spec(",".join(items[1 : s2 - 1]))
        c2 = _number(items[s2 - 1])
        spec2 = parse_spec(",".join(items[s2:]))
        return AffineSum(c1, spec1, c2, spec2)
    raise GrammarError(f"cannot parse function spec {text!r}")


def _fmt_number(c) -> str:
    if isinstance(c, float):
        return repr(c)
    return str(Fraction(c))


def format_spec(spec: FunctionSpec) -> str:
    if isinstance(spec, Polynomial):
        return "poly:" + (",".join(_fmt_number(c) for c in spec.coeffs) or "0")
    if isinstance(spec, FbFamily):
        return f"fb:{_fmt_number(spec.b)}"
    if isinstance(spec, FourierSpec):
        return f"fourier:{spec.name}"
    if isinstance(spec, Reflect):
        return f"reflect({format_spec(spec.inner)})"
    if isinstance(spec, Negate):
        return f"neg({format_spec(spec.inner)})"
    if isinstance(spec, AffineSum):
        return (f"sum({_fmt_number(spec.c1)},{format_spec(spec.inner1)},"
                f"{_fmt_number(spec.c2)},{format_spec(spec.inner2)})")
    if isinstance(spec, BlackBox):
        raise GrammarError("black-box specs have no text form")
    raise TypeError(f"not a function spec: {spec!r}")
