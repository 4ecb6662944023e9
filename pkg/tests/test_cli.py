import json
import math

import pytest

from ddc_rates.cli import (
    COLUMNS,
    EXIT_CONFIG,
    EXIT_NONCONVERGENCE,
    EXIT_OK,
    ConfigError,
    RunConfig,
    SweepSpec,
    from_csv,
    main,
    run_single,
    run_sweep,
    to_csv,
    to_json,
)
from ddc_rates.quadrature import QuadratureConfig

UNIT = 1 / (8 * math.pi)


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_sine_zero_example(capsys):
    code, out, _ = run(["--state", "sym", "--trajectory", "inertial", "--L", "3.14159265"], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# ddc-rates v1"
    assert lines[1] == ",".join(COLUMNS)
    (rec,) = from_csv(out)
    assert rec["rate_total"] == pytest.approx(-0.0397887, abs=1e-7)
    assert rec["method"] == "analytic" and rec["status"] == "ok"


def test_accelerated_antisymmetric_with_check(capsys):
    code, out, _ = run(
        ["--state", "asym", "--trajectory", "accelerated", "--a", "2", "--L", "1", "--method", "both", "--format", "json"],
        capsys,
    )
    assert code == EXIT_OK
    (rec,) = json.loads(out)["records"]
    assert rec["rate_total"] == pytest.approx(-0.0180786, rel=1e-4)
    assert rec["rate_total"] == pytest.approx(-UNIT * (1 - math.sin(math.asinh(1.0)) / math.sqrt(2)), rel=1e-11)
    assert rec["v"] is None and rec["a"] == 2.0
    assert rec["eps_residual"] < 1e-8 * UNIT


def test_short_ladder_exit_two(capsys):
    code, out, err = run(["--state", "sym", "--method", "both", "--eps-levels", "2"], capsys)
    assert code == EXIT_NONCONVERGENCE
    (rec,) = from_csv(out)
    assert rec["status"] == "nonconverged"
    assert rec["eps_residual"] > 0
    assert "nonconverged" in err and "residual" in err
    # analytic values are still reported
    assert rec["rate_total"] == pytest.approx(-UNIT * (1 + math.sin(1.0)), rel=1e-11)


@pytest.mark.parametrize(
    "argv",
    [
        ["--state", "bogus"],
        ["--trajectory", "circular"],
        ["--omega0", "-1"],
        ["--L", "0"],
        ["--trajectory", "accelerated", "--a", "0"],
        ["--v", "1.0"],
        ["--sweep", "L:1:0.5:4"],
        ["--sweep", "a:0.1:1:4"],
        ["--sweep", "L:0:1:4:log"],
        ["--eps-levels", "1"],
        ["--config", "/nonexistent/file"],
    ],
)
def test_config_errors_exit_one(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == EXIT_CONFIG
    assert out == ""
    assert "error" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# two atoms\nstate = asym\ntrajectory = accelerated\na = 2\nL = 5\n")
    _, out, _ = run(["--config", str(cfg), "--L", "1"], capsys)
    (rec,) = from_csv(out)
    assert rec["state"] == "asym" and rec["L"] == 1.0 and rec["a"] == 2.0
    cfg.write_text("state = sym\ncolour = blue\n")
    code, _, _ = run(["--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG


def test_out_path(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, out, _ = run(["--state", "sym", "--out", str(path)], capsys)
    assert code == EXIT_OK and out == ""
    assert path.read_text().startswith("# ddc-rates v1\n")


def test_sweep_spec_parse():
    s = SweepSpec.parse("L:0.1:10:64:log")
    assert (s.variable, s.steps, s.scale) == ("L", 64, "log")
    g = s.grid()
    assert g[0] == pytest.approx(0.1) and g[-1] == pytest.approx(10.0) and len(g) == 64
    for bad in ("L:1:2", "x:1:2:3", "L:1:2:1", "L:1:2:3:cubic", "L:a:2:3"):
        with pytest.raises(ConfigError):
            SweepSpec.parse(bad)


def test_analytic_sweep_is_byte_stable(tmp_path, capsys):
    argv = ["--state", "sym", "--sweep", "L:0.1:10:64:log"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    _, parallel, _ = run(argv + ["--jobs", "2"], capsys)
    assert parallel == first


def test_csv_json_round_trip():
    code, records, summary = run_sweep(RunConfig(state="asym"), SweepSpec.parse("L:0.5:4:7"))
    assert code == EXIT_OK
    from_text = from_csv(to_csv(records, summary))
    from_doc = json.loads(to_json(records, summary))["records"]
    assert from_text == from_doc == records


def test_symmetric_sweep_oscillates_about_baseline():
    code, records, summary = run_sweep(RunConfig(state="sym"), SweepSpec.parse("L:0.1:10:64:log"))
    assert code == EXIT_OK and len(records) == 64
    assert [r["L"] for r in records] == sorted(r["L"] for r in records)
    crossings = summary["crossings"]
    assert len(crossings) == 3
    for c, k in zip(crossings, (1, 2, 3)):
        assert abs(c - k * math.pi) < 0.1 * k * math.pi  # grid spacing about 7.5%
    assert summary["enhanced"] + summary["weakened"] == 64
    assert "crossings=" in to_csv(records, summary).splitlines()[-1]


def test_antisymmetric_acceleration_sweep_tends_to_inertial():
    _, records, _ = run_sweep(RunConfig(state="asym", trajectory="accelerated", L=1.0), SweepSpec.parse("a:1e-3:10:12:log"))
    _, inertial = run_single(RunConfig(state="asym", L=1.0))
    gaps = [abs(r["rate_total"] - inertial["rate_total"]) for r in records]
    assert gaps[0] < 1e-6 * UNIT  # O(a^2)
    assert gaps == sorted(gaps)


def test_ground_state_sweep_constant_columns():
    _, records, _ = run_sweep(RunConfig(state="gg"), SweepSpec.parse("L:0.1:10:6:log"))
    for col in ("rate_vf", "rate_rr"):
        vals = [r[col] for r in records]
        assert max(vals) - min(vals) <= 1e-10 * UNIT


def test_numeric_method_row():
    code, rec = run_single(RunConfig(state="sym", method="numeric", quadrature=QuadratureConfig()))
    assert code == EXIT_OK
    assert rec["rate_total"] == pytest.approx(-UNIT * (1 + math.sin(1.0)), rel=1e-9)
    assert rec["eps_residual"] is not None


def test_partial_failures_mark_rows():
    bad = RunConfig(state="sym", method="numeric", quadrature=QuadratureConfig(levels=2))
    code, records, _ = run_sweep(bad, SweepSpec.parse("L:0.5:1:2"))
    assert code == EXIT_NONCONVERGENCE
    assert [r["status"] for r in records] == ["nonconverged"] * 2
