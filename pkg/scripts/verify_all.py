"""Run every bundled verification through the command-line entry point; exit 1 on any failure."""
import sys

from riemann_mono.cli import main

RUNS = [
    ["verify", "majorization", "--n-max", "60"],
    ["verify", "fb-identities"],
    ["poly-decide", "--spec", "poly:0,1,0,-7,6", "--kind", "left"],
    ["certify", "--spec", "fb:0", "--kind", "left", "--audit", "500"],
    ["certify", "--spec", "fourier:expcos", "--kind", "right", "--audit", "500"],
    ["fourier-sum", "--builtin", "expcos", "--n", "1..10", "--kind", "right"],
]

if __name__ == "__main__":
    worst = 0
    for argv in RUNS:
        print("$ riemann-mono " + " ".join(argv))
        worst = max(worst, main(argv))
        print()
    print("all checks passed" if worst == 0 else f"failures (exit {worst})")
    sys.exit(worst)
