"""Full f_b scan over b in [-2, 1.99] and report where L_n / R_n fail to be monotone.

    python3 scripts/scan_fb.py --n-max 2000 --out fb_scan.csv
"""
import argparse
import time

from riemann_mono.cli import main as cli_main
from riemann_mono.fb import CONSTANTS, scan


def summarize(rep):
    for kind in ("left", "right"):
        mixed = [b for b in rep.b_grid if rep.status(b, kind).mixed]
        if mixed:
            print(f"{kind:5s}: not monotone for {len(mixed)} grid points, b in [{min(mixed)}, {max(mixed)}]")
        else:
            print(f"{kind:5s}: monotone at every grid point")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=2000)
    ap.add_argument("--b-step", type=float, default=0.01)
    ap.add_argument("--out", default=None, help="also write the CSV through the command-line tool")
    args = ap.parse_args()
    c = CONSTANTS
    print(f"alpha={c.alpha:.12f} gamma={c.gamma:.10f} beta-={c.beta_minus:.10f} beta+={c.beta_plus:.10f}")
    t = time.perf_counter()
    rep = scan(-2.0, 1.99, args.b_step, args.n_max)
    print(f"scanned {len(rep.b_grid)} values of b to n={args.n_max} in {time.perf_counter() - t:.1f}s")
    summarize(rep)
    if args.out:
        cli_main(["scan-fb", "--b-from", "-2", "--b-to", "1.99", "--b-step", str(args.b_step),
                  "--n-max", str(args.n_max), "--csv", args.out])
