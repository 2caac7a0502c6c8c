import io
import json

import pytest

from riemann_mono.cli import RunConfig, UsageError, fmt_real, main, parse_args, run, to_svg


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    cfg = parse_args(["sum", "--spec", "fb:1", "--kind", "right", "--n", "1..5"])
    assert (cfg.command, cfg.spec, cfg.kind, cfg.n_from, cfg.n_to) == ("sum", "fb:1", "right", 1, 5)
    cfg = parse_args(["poly-decide", "--spec", "poly:0,1,0,-7,6", "--kind", "left"])
    assert cfg.command == "poly-decide"


@pytest.mark.parametrize("argv,flag", [
    (["sum", "--spec", "fb:2.5", "--kind", "left"], "b"),
    (["sum", "--spec", "fb:1", "--kind", "left", "--n", "5..2"], "--n"),
    (["sum", "--spec", "fb:1", "--kind", "left", "--tol", "0"], "--tol"),
    (["sum", "--bogus"], "--bogus"),
    (["sum", "--kind", "left"], "--spec"),
    (["scan-fb", "--b-to", "2.5"], "--b-to"),
])
def test_usage_errors_exit_2(argv, flag):
    code, out, err = _run(argv)
    assert code == 2 and out == "" and flag in err


def test_sum_csv_anchor():
    code, out, _ = _run(["sum", "--spec", "fb:1", "--kind", "right", "--n", "1..2", "--format", "csv"])
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "value"]
    assert rows[1] == ["1", "1.0"]
    assert float(rows[2][1]) == pytest.approx(7 / 6, abs=1e-14)
    assert rows[2][1] == "1.1666666666666665"


def test_fmt_real_digits():
    assert fmt_real(0.1) == "0.10000000000000001"
    assert fmt_real(-3.0) == "-3.0"
    assert fmt_real(None) == ""


def test_verify_commands():
    assert _run(["verify", "majorization", "--n-max", "40"])[0] == 0
    code, out, _ = _run(["verify", "fb-identities"])
    assert code == 0 and "FAIL" not in out


def test_poly_decide_json():
    code, out, _ = _run(["poly-decide", "--spec", "poly:0,1,0,-7,6", "--kind", "left", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["direction"] == "decreasing"


def test_poly_decide_rejects_non_polynomial():
    assert _run(["poly-decide", "--spec", "fb:1", "--kind", "left"])[0] == 2


def test_certify_audit_exit_codes():
    code, out, _ = _run(["certify", "--spec", "fb:0", "--kind", "left", "--audit", "200", "--json"])
    obj = json.loads(out)
    assert code == 0 and any(c["rule_id"] == "symmetrization" for c in obj["certificates"])
    assert all(r["ok"] for r in obj["audit"])


def test_failed_check_exit_1(monkeypatch):
    import riemann_mono.cli as cli

    monkeypatch.setattr(cli, "fb_identity_checks", lambda: [("forced", False, "x")])
    code, out, _ = _run(["verify", "fb-identities"])
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["sum", "--spec", "sum(1,poly:0,0,1,1/2,fb:1)", "--kind", "midpoint", "--n", "1..30", "--format", "json"],
    ["fourier-sum", "--builtin", "expcos", "--n", "1..8", "--kind", "left", "--format", "csv"],
    ["scan-fb", "--b-from", "0.7", "--b-to", "0.8", "--b-step", "0.05", "--n-max", "300", "--format", "csv"],
    ["certify", "--spec", "fourier:expcos", "--kind", "right"],
    ["verify", "majorization", "--n-max", "12", "--seed", "3", "--json"],
    ["sum", "--spec", "fb:1", "--kind", "right", "--n", "1..20", "--format", "svg"],
])
def test_byte_determinism(argv):
    a, b = _run(argv), _run(argv)
    assert a[0] == 0 and a == b and a[1]


def test_scan_threads_do_not_change_output():
    base = ["scan-fb", "--b-from", "0.5", "--b-to", "1.5", "--b-step", "0.25", "--n-max", "200", "--json"]
    assert _run(base + ["--threads", "1"]) == _run(base + ["--threads", "2"])


def test_config_file_and_override(tmp_path):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"n_max": 50, "b_from": 1.0, "b_to": 1.2, "b_step": 0.1, "format": "csv"}))
    cfg = parse_args(["scan-fb", "--config", str(conf), "--b-to", "1.1"])
    assert (cfg.n_max, cfg.b_from, cfg.b_to, cfg.fmt) == (50, 1.0, 1.1, "csv")
    bad = tmp_path / "bad.json"
    bad.write_text('{"nonsense": 1}')
    assert _run(["scan-fb", "--config", str(bad)])[0] == 2


def test_output_file(tmp_path):
    path = tmp_path / "scan.csv"
    code, out, _ = _run(["scan-fb", "--b-from", "1.5", "--b-to", "1.6", "--b-step", "0.1", "--n-max", "100",
                         "--csv", str(path)])
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "b,kind,direction,first_violation_n,first_violation_delta"
    assert lines[1:] == ["1.5,left,increasing,,", "1.5,right,decreasing,,",
                         "1.6000000000000001,left,increasing,,", "1.6000000000000001,right,decreasing,,"]


def test_svg_writer():
    svg = to_svg({"a": [(1, 0.0), (2, 1.0)], "b": [(1, 1.0), (2, float("nan"))]}, "t<1>")
    assert svg.startswith("<svg") and svg.count("<polyline") == 2 and "t&lt;1&gt;" in svg


def test_run_direct():
    out = io.StringIO()
    assert run(RunConfig("sum", spec="poly:0,1", kind="left", n_from=1, n_to=3), out) == 0
    assert "0.33333333333333331" in out.getvalue()
