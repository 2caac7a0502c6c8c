"""Command-line front end.

    riemann-mono sum --spec fb:1 --kind right --n 1..5
    riemann-mono certify --spec poly:1,-1 --kind left --json
    riemann-mono poly-decide --spec poly:0,1,0,-7,6 --kind left
    riemann-mono fourier-sum --builtin expcos --n 10 --kind right
    riemann-mono scan-fb --b-from -2 --b-to 1.99 --b-step 0.01 --n-max 2000 --csv out.csv
    riemann-mono verify majorization --n-max 60
    riemann-mono verify fb-identities

Exit status: 0 success, 1 a check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import RiemannMonoError
from .kinds import as_kind, format_kind, parse_kind

COMMANDS = ("sum", "certify", "poly-decide", "fourier-sum", "scan-fb", "verify")
FORMATS = ("text", "json", "csv", "svg")
VERIFY_TARGETS = ("majorization", "fb-identities")

log = logging.getLogger("riemann_mono")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: Optional[str] = None
    spec: Optional[str] = None
    kind: str = "left"
    n_from: int = 1
    n_to: int = 10
    tol: float = 1e-12
    shape_tol: float = 1e-9
    fmt: str = "text"
    output: Optional[str] = None
    seed: int = 0
    builtin: Optional[str] = None
    b_from: float = -2.0
    b_to: float = 1.99
    b_step: float = 0.01
    n_max: int = 2000
    trials: int = 200
    threads: Optional[int] = None
    audit: int = 0


DEFAULTS = {f: v for f, v in RunConfig("sum").__dict__.items() if f != "command"}
NMAX_DEFAULTS = {"scan-fb": 2000, "majorization": 60}


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"--n: expected N or A..B, got {text!r}") from exc
    if not 1 <= lo <= hi:
        raise UsageError(f"--n: need 1 <= A <= B, got {text!r}")
    return lo, hi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values; flags override it")
    common.add_argument("--format", dest="fmt", choices=FORMATS)
    common.add_argument("--json", action="store_const", const="json", dest="fmt", help="shorthand for --format json")
    common.add_argument("--output", "-o", help="write primary output here instead of stdout")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int, help="worker processes (0 = all cores); default RIEMANN_MONO_THREADS")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="riemann-mono", description="Monotonicity of Riemann sums")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sum", parents=[common], help="evaluate a sum over a range of n")
    s.add_argument("--spec", required=False)
    s.add_argument("--kind")
    s.add_argument("--n", dest="n_range")
    s.add_argument("--tol", type=float, help="tolerance for the monotonicity summary")

    c = sub.add_parser("certify", parents=[common], help="run the certification rules")
    c.add_argument("--spec")
    c.add_argument("--kind")
    c.add_argument("--shape-tol", type=float)
    c.add_argument("--audit", type=int, help="scan each positive certificate up to this n")
    c.add_argument("--tol", type=float, help="tolerance for --audit scans")

    d = sub.add_parser("poly-decide", parents=[common], help="exact monotonicity for a polynomial")
    d.add_argument("--spec")
    d.add_argument("--kind")

    f = sub.add_parser("fourier-sum", parents=[common], help="left/right sums from Fourier coefficients")
    f.add_argument("--builtin")
    f.add_argument("--n", dest="n_range")
    f.add_argument("--kind")
    f.add_argument("--tol", type=float)

    sc = sub.add_parser("scan-fb", parents=[common], help="scan f_b sums over a grid of b")
    sc.add_argument("--b-from", type=float)
    sc.add_argument("--b-to", type=float)
    sc.add_argument("--b-step", type=float)
    sc.add_argument("--n-max", type=int)
    sc.add_argument("--tol", type=float)
    sc.add_argument("--csv", dest="csv_path", help="write CSV rows to this path")

    v = sub.add_parser("verify", parents=[common], help="run a bundle of checks")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--n-max", type=int)
    v.add_argument("--trials", type=int)
    return p


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    given = {k: v for k, v in vars(ns).items() if v is not None}
    conf: dict = {}
    if "config" in given:
        try:
            with open(given["config"]) as fh:
                conf = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"--config: cannot read {given['config']}: {exc}") from exc
        if not isinstance(conf, dict):
            raise UsageError("--config: top level must be an object")
        conf = {k.replace("-", "_"): v for k, v in conf.items()}
        if "format" in conf:
            conf["fmt"] = conf.pop("format")
    merged = dict(DEFAULTS)
    if ns.command == "verify":
        merged["n_max"] = NMAX_DEFAULTS["majorization"] if ns.target == "majorization" else merged["n_max"]
    for k, v in conf.items():
        if k in merged:
            merged[k] = v
        elif k not in ("n", "n_range", "csv", "csv_path", "config", "verbose"):
            raise UsageError(f"--config: unknown key {k!r}")
    if "n" in conf and "n_range" not in given:
        given["n_range"] = str(conf["n"])
    for k, v in given.items():
        if k in merged:
            merged[k] = v
    if "n_range" in given:
        merged["n_from"], merged["n_to"] = _parse_range(given["n_range"])
    if "csv_path" in given:
        merged["fmt"], merged["output"] = "csv", given["csv_path"]
    elif "csv" in conf and "output" not in given:
        merged["fmt"], merged["output"] = "csv", conf["csv"]
    cfg = RunConfig(command=ns.command, target=getattr(ns, "target", None),
                    **{k: v for k, v in merged.items() if k != "target"})
    _validate(cfg)
    if given.get("verbose"):
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
    return cfg


def _validate(cfg: RunConfig):
    if cfg.fmt not in FORMATS:
        raise UsageError(f"--format: unknown format {cfg.fmt!r}")
    for name in ("tol", "shape_tol", "b_step"):
        if not getattr(cfg, name) > 0:
            raise UsageError(f"--{name.replace('_', '-')}: must be positive")
    if cfg.n_max < 2 and cfg.command == "scan-fb":
        raise UsageError("--n-max: must be at least 2")
    if cfg.command in ("sum", "certify", "poly-decide"):
        if not cfg.spec:
            raise UsageError("--spec: required")
        from .grammar import parse_spec

        parse_spec(cfg.spec)  # grammar and parameter errors surface here
    if cfg.command in ("sum", "certify", "poly-decide", "fourier-sum"):
        parse_kind(cfg.kind)
    if cfg.command == "fourier-sum":
        if not cfg.builtin:
            raise UsageError("--builtin: required")
        if cfg.kind not in ("left", "right"):
            raise UsageError("--kind: fourier-sum supports left and right only")
    if cfg.command == "scan-fb" and not cfg.b_to < 2:
        raise UsageError("--b-to: f_b needs b < 2")
    if cfg.command == "scan-fb" and cfg.b_to < cfg.b_from:
        raise UsageError("--b-to: must not be below --b-from")


# ---------------------------------------------------------------------------
# output helpers


def fmt_real(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        s = format(x, ".17g")
        # keep reals recognisable as reals: 1.0 rather than 1
        return s + ".0" if s.lstrip("-").isdigit() else s
    return str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(fmt_real(v) for v in r) + "\n")
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "to_dict"):
        return o.to_dict()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def to_svg(series: dict, title: str = "", width: int = 640, height: int = 400) -> str:
    """Minimal line plot: one polyline per series of (x, y) points, fixed viewport."""
    pad = 40
    pts = [p for s in series.values() for p in s if math.isfinite(p[1])]
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    sx = lambda x: pad + (x - x0) / (x1 - x0) * (width - 2 * pad)
    sy = lambda y: height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)
    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{_esc(title)}</text>',
        f'<text x="{pad}" y="{height - 10}" font-size="10">{fmt_real(float(x0))}</text>',
        f'<text x="{width - pad}" y="{height - 10}" text-anchor="end" font-size="10">{fmt_real(float(x1))}</text>',
        f'<text x="2" y="{height - pad}" font-size="10">{float(y0):.6g}</text>',
        f'<text x="2" y="{pad}" font-size="10">{float(y1):.6g}</text>',
    ]
    for i, (name, s) in enumerate(series.items()):
        c = colors[i % len(colors)]
        path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s if math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{path}"/>')
        out.append(f'<text x="{width - pad}" y="{pad + 14 * (i + 1)}" text-anchor="end" font-size="11" fill="{c}">{_esc(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# ---------------------------------------------------------------------------
# commands; each returns (text, exit code)


def _cmd_sum(cfg: RunConfig):
    from .grammar import parse_spec
    from .sums import monotonicity_scan, sequence_ns, sum_value

    spec = parse_spec(cfg.spec)
    kind = as_kind(cfg.kind)
    ns = list(sequence_ns(kind, cfg.n_from, cfg.n_to))
    if not ns:
        raise UsageError(f"--n: no valid n for kind {cfg.kind}")
    vals = [sum_value(spec, kind, n) for n in ns]
    status = monotonicity_scan(vals, cfg.tol, ns[0]) if len(vals) >= 2 else None
    if cfg.fmt == "csv":
        return to_csv(["n", "value"], zip(ns, vals)), 0
    if cfg.fmt == "json":
        return to_json({"spec": cfg.spec, "kind": format_kind(kind), "n": ns, "values": vals,
                        "monotonicity": status.to_dict() if status else None}), 0
    if cfg.fmt == "svg":
        return to_svg({format_kind(kind): list(zip(ns, vals))}, f"{cfg.spec} {format_kind(kind)}"), 0
    lines = [f"# {cfg.spec} {format_kind(kind)}"]
    lines += [f"{n}\t{fmt_real(v)}" for n, v in zip(ns, vals)]
    if status:
        lines.append(f"# direction: {status.direction} (strict={status.strict}, tol={cfg.tol:g})")
    return "\n".join(lines) + "\n", 0


def _cmd_certify(cfg: RunConfig):
    from .certify import audit, certify
    from .grammar import parse_spec

    spec = parse_spec(cfg.spec)
    kind = as_kind(cfg.kind)
    certs = certify(spec, kind, tol=cfg.shape_tol)
    rows = audit(spec, certs, cfg.audit, cfg.tol) if cfg.audit else []
    code = 0 if all(r.ok for r in rows) else 1
    if cfg.fmt == "json":
        obj = {"spec": cfg.spec, "kind": format_kind(kind), "certificates": [c.to_dict() for c in certs]}
        if rows:
            obj["audit"] = [{"rule_id": r.certificate.rule_id, "direction": r.certificate.direction,
                             "observed": r.observed, "ok": r.ok} for r in rows]
        return to_json(obj), code
    if cfg.fmt == "csv":
        return to_csv(["sum_kind", "direction", "rule_id", "soundness", "shift"],
                      [(c.sum_kind, c.direction, c.rule_id, c.soundness, c.shift) for c in certs]), code
    if cfg.fmt == "svg":
        raise UsageError("--format svg is not available for certify")
    lines = [f"# {cfg.spec} {format_kind(kind)}: {len(certs)} certificate(s)"]
    if not certs:
        lines.append("no rule applies")
    for c in certs:
        extra = f" [sequence S_n - {fmt_real(c.shift)}/n]" if c.shift is not None else ""
        lines.append(f"{c.direction:15s} {c.rule_id:24s} {c.soundness}{extra}")
        for h in c.hypotheses:
            lines.append(f"    {'ok ' if h.outcome else 'NO '} {h.name} ({h.detail})")
        if c.notes:
            lines.append(f"    note: {c.notes}")
    for r in rows:
        lines.append(f"audit {r.certificate.rule_id} {r.certificate.direction}: observed {r.observed} "
                     f"-> {'ok' if r.ok else 'FAIL'}")
    return "\n".join(lines) + "\n", code


def _cmd_poly_decide(cfg: RunConfig):
    from .funcspec import Polynomial
    from .grammar import parse_spec
    from .polyexact import decide_monotone, exact_sum

    spec = parse_spec(cfg.spec)
    if not isinstance(spec, Polynomial):
        raise UsageError("--spec: poly-decide needs a poly:... spec")
    verdict = decide_monotone(spec.poly, cfg.kind)
    form = exact_sum(spec.poly, cfg.kind)
    if cfg.fmt == "json":
        return to_json({"spec": cfg.spec, "kind": cfg.kind, "closed_form": str(form), **verdict.to_dict()}), 0
    if cfg.fmt in ("csv", "svg"):
        raise UsageError(f"--format {cfg.fmt} is not available for poly-decide")
    lines = [
        f"# {cfg.spec} {cfg.kind}",
        f"closed form: {form}",
        f"difference numerator D(n): {' '.join(verdict.proof['D']) or '0'} (ascending)",
        f"direction: {verdict.direction} for all n >= {verdict.proof['n0']}",
    ]
    for lo, hi in verdict.proof.get("intervals", []):
        lines.append(f"  root of D in ({lo}, {hi}]")
    return "\n".join(lines) + "\n", 0


def _cmd_fourier_sum(cfg: RunConfig):
    from .fourier import builtin_provider, builtin_spec, sum_from_coeffs
    from .sums import sum_value

    prov = builtin_provider(cfg.builtin)
    spec = builtin_spec(cfg.builtin)
    ns = list(range(cfg.n_from, cfg.n_to + 1))
    tol = min(cfg.tol, 1e-15)
    vals = [sum_from_coeffs(prov, spec.f0, spec.f1, n, cfg.kind, tol) for n in ns]
    direct = [sum_value(spec, cfg.kind, n) for n in ns]
    if cfg.fmt == "csv":
        return to_csv(["n", "series", "direct"], zip(ns, vals, direct)), 0
    if cfg.fmt == "json":
        return to_json({"builtin": cfg.builtin, "kind": cfg.kind, "n": ns, "series": vals, "direct": direct,
                        "note": "assumes f continuous and of bounded variation"}), 0
    if cfg.fmt == "svg":
        return to_svg({"series": list(zip(ns, vals)), "direct": list(zip(ns, direct))},
                      f"fourier:{cfg.builtin} {cfg.kind}"), 0
    lines = [f"# fourier:{cfg.builtin} {cfg.kind}  n  series  direct"]
    lines += [f"{n}\t{fmt_real(a)}\t{fmt_real(b)}" for n, a, b in zip(ns, vals, direct)]
    return "\n".join(lines) + "\n", 0


def _cmd_scan_fb(cfg: RunConfig):
    from .fb import scan

    rep = scan(cfg.b_from, cfg.b_to, cfg.b_step, cfg.n_max, cfg.tol, workers=cfg.threads)
    rows = list(rep.rows())
    if cfg.fmt == "csv":
        return to_csv(["b", "kind", "direction", "first_violation_n", "first_violation_delta"], rows), 0
    if cfg.fmt == "json":
        return to_json({
            "n_range": list(rep.n_range), "tolerance": rep.tolerance,
            "rows": [{"b": b, "kind": k, "direction": d, "first_violation_n": n, "first_violation_delta": dl}
                     for b, k, d, n, dl in rows],
            "witnesses": [asdict(w) for w in rep.witnesses],
        }), 0
    if cfg.fmt == "svg":
        code = {"increasing": 1, "decreasing": -1, "none": 0}
        series = {k: [(b, code[rep.status(b, k).direction]) for b in rep.b_grid] for k in ("left", "right")}
        return to_svg(series, "direction (+1 inc, -1 dec, 0 neither) vs b"), 0
    lines = [f"# f_b scan, n = 1..{cfg.n_max}, tol {cfg.tol:g}"]
    for b in rep.b_grid:
        lines.append(f"b={b!r:>6}  left: {rep.label(b, 'left'):45s} right: {rep.label(b, 'right')}")
    return "\n".join(lines) + "\n", 0


def _verify_majorization(cfg: RunConfig):
    from .majorize import case1_indices, case1_prefix, first_failing_prefix, hlp_oracle, lemma_vectors

    ok_all = True
    rows = []
    for n in range(1, cfg.n_max + 1):
        inst = lemma_vectors(n)
        bad = first_failing_prefix(inst.x, inst.y)
        formula = None
        if n <= 30:
            xs = sorted(inst.x)
            pref = [Fraction(0)]
            for t in xs:
                pref.append(pref[-1] + t)
            formula = all(pref[k] == case1_prefix(n, m, k) for m, k in case1_indices(n))
        hlp = hlp_oracle(inst, min(cfg.trials, 200), cfg.seed + n) if n <= 20 else None
        ok = bad is None and formula is not False and hlp is not False
        ok_all &= ok
        rows.append((n, bad is None, bad, formula, hlp, ok))
    if cfg.fmt == "json":
        return to_json({"rows": [dict(zip(("n", "weak_supermajorized", "first_failing_prefix", "case1_formula",
                                            "hlp", "ok"), r)) for r in rows], "passed": ok_all}), 0 if ok_all else 1
    if cfg.fmt == "csv":
        return to_csv(["n", "weak_supermajorized", "first_failing_prefix", "case1_formula", "hlp", "ok"],
                      rows), 0 if ok_all else 1
    lines = []
    for n, wm, bad, formula, hlp, ok in rows:
        extra = f" first failing prefix {bad}" if bad is not None else ""
        lines.append(f"n={n:3d} {'pass' if ok else 'FAIL'}{extra}"
                     + ("" if formula is None else f" case1={'ok' if formula else 'mismatch'}")
                     + ("" if hlp is None else f" hlp={'ok' if hlp else 'fail'}"))
    lines.append("all passed" if ok_all else "FAILURES")
    return "\n".join(lines) + "\n", 0 if ok_all else 1


def fb_identity_checks() -> list[tuple[str, bool, str]]:
    from .fb import (
        CONSTANTS, check_inequalities, concavity_class, decomposition_checks, f1_closed_form,
        f1_derivative_check, trigamma_identity_residuals,
    )
    from .funcspec import FbFamily
    from .sums import sum_value

    out = []
    c = CONSTANTS
    out.append(("alpha root", c.alpha_residual <= 1e-12 and -0.8795 < c.alpha < -0.8793,
                f"alpha={c.alpha:.15f} residual={c.alpha_residual:.2e}"))
    out.append(("gamma", abs(c.gamma - 1.347296) < 1e-5, f"{c.gamma:.9f}"))
    out.append(("beta+", abs(c.beta_plus - 1.651388) < 1e-5, f"{c.beta_plus:.9f}"))
    f1 = FbFamily(1)
    err = max(abs(f1_closed_form(n) - sum_value(f1, "right", n)) for n in range(1, 201))
    out.append(("R_x(f_1) closed form, n <= 200", err <= 1e-10, f"max error {err:.2e}"))
    tr = max(trigamma_identity_residuals(1000))
    out.append(("trigamma identity, n <= 1000", tr <= 1e-10, f"max residual {tr:.2e}"))
    for r in check_inequalities():
        out.append((r.name, r.passed, f"min margin {r.min_margin:.3e} at x={r.argmin:g}"))
    for b in (0.75, 1.2, 1.4):
        for item in decomposition_checks(b):
            out.append((f"{item.name} [b={b}]", item.passed, f"margin {item.margin:.3e}"))
    for b in (-1.0, 0.0, 0.5, 1.2, 1.5, 1.8):
        try:
            out.append((f"concavity class b={b}", True, concavity_class(b)))
        except RiemannMonoError as exc:
            out.append((f"concavity class b={b}", False, str(exc)))
    dr = f1_derivative_check()
    out.append(("f_1 derivative check", dr.passed, f"min inner factor {dr.min_inner_factor:.3e}, "
                                                   f"min derivative {dr.min_numeric_derivative:.3e}"))
    return out


def _verify_fb(cfg: RunConfig):
    checks = fb_identity_checks()
    ok_all = all(ok for _, ok, _ in checks)
    code = 0 if ok_all else 1
    if cfg.fmt == "json":
        return to_json({"checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks],
                        "passed": ok_all}), code
    if cfg.fmt == "csv":
        return to_csv(["name", "passed", "detail"], checks), code
    lines = [f"{'PASS' if ok else 'FAIL'}  {n}: {d}" for n, ok, d in checks]
    lines.append("all passed" if ok_all else "FAILURES")
    return "\n".join(lines) + "\n", code


def _cmd_verify(cfg: RunConfig):
    if cfg.fmt == "svg":
        raise UsageError("--format svg is not available for verify")
    if cfg.target == "majorization":
        return _verify_majorization(cfg)
    return _verify_fb(cfg)


HANDLERS = {
    "sum": _cmd_sum,
    "certify": _cmd_certify,
    "poly-decide": _cmd_poly_decide,
    "fourier-sum": _cmd_fourier_sum,
    "scan-fb": _cmd_scan_fb,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text, code = HANDLERS[cfg.command](cfg)
    except (UsageError, RiemannMonoError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except (UsageError, RiemannMonoError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    return run(cfg, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
