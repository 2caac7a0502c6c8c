"""Write an SVG of L_n and R_n for one spec.

    python3 scripts/plot_sums.py fb:3/4 1 60 fb34.svg
"""
import sys

from riemann_mono.cli import to_svg
from riemann_mono.grammar import parse_spec
from riemann_mono.sums import sum_value

if __name__ == "__main__":
    if len(sys.argv) != 5:
        sys.exit(__doc__)
    text, lo, hi, out = sys.argv[1], int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    spec = parse_spec(text)
    series = {k: [(n, sum_value(spec, k, n)) for n in range(lo, hi + 1)] for k in ("left", "right")}
    with open(out, "w") as fh:
        fh.write(to_svg(series, f"{text}: left and right sums"))
    print(f"wrote {out}")
