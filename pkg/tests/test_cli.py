import json
import math

import numpy as np
import pytest

from levyqs import cli
from levyqs.output import SERIES_HEADER, read_series_csv

QW_ARGS = ["--system", "qw", "--steps", "200", "--trajectories", "6", "--seed", "3"]
QKR_ARGS = ["--system", "qkr", "--p", "1", "--q", "3", "--kappa1", "1", "--kappa2", "-1",
            "--steps", "200", "--trajectories", "4", "--seed", "3"]


@pytest.mark.parametrize("text, value", [
    ("pi/3", math.pi / 3), ("-3*pi/8", -3 * math.pi / 8), ("2pi/3", 2 * math.pi / 3),
    ("pi", math.pi), ("0.25", 0.25), ("3 * pi / 8", 3 * math.pi / 8),
])
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == value


def test_parse_sweep_ranges():
    assert cli.parse_sweep("alpha=0.2:1.0:0.2") == ("alpha", [0.2, 0.4, 0.6, 0.8, 1.0])
    param, vals = cli.parse_sweep("theta=pi/8:3pi/8:pi/8")
    assert param == "theta"
    assert np.allclose(vals, [math.pi / 8, math.pi / 4, 3 * math.pi / 8], atol=1e-15)
    assert cli.parse_sweep("pq=1/3,2/5") == ("pq", [(1, 3), (2, 5)])


@pytest.mark.parametrize("bad", ["alpha=0:1:0.5", "alpha=2.5", "theta=pi/2", "pq=2/4", "beta=1"])
def test_parse_sweep_rejects(bad):
    with pytest.raises(Exception):
        cli.parse_sweep(bad)


def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "qw"
    assert cli.main(["run", *QW_ARGS, "--out", str(out), "--workers", "1"]) == 0
    assert "c = " in capsys.readouterr().out
    assert (out / "series.csv").read_text().splitlines()[0] == SERIES_HEADER
    data = read_series_csv(out / "series.csv")
    summary = json.loads((out / "summary.json").read_text())
    assert list(summary) == ["config", "fit", "moment_fits", "runtime_seconds", "versions"]
    cfg = summary["config"]
    assert cfg["n_steps"] == 200 and cfg["params"]["chirality"] == "plus"
    assert cfg["fit_window"] == [25, 200]
    assert cfg["record_schedule"] == [int(t) for t in data["t"]]
    assert set(summary["fit"]) >= {"c", "c_stderr", "r_squared", "window", "column"}
    gp = (out / "plot.gp").read_text()
    assert "set logscale xy" in gp and "series.csv" in gp


def test_series_csv_precision(tmp_path):
    out = tmp_path / "o"
    cli.main(["run", *QKR_ARGS, "--out", str(out), "--workers", "1", "--record", "all"])
    rows = (out / "series.csv").read_text().splitlines()
    assert len(rows) == 201
    data = read_series_csv(out / "series.csv")
    assert np.all(data["rms_sigma"] >= data["sigma_mean"] - 1e-12)
    # 17 significant digits round-trip exactly
    field = rows[-1].split(",")[1]
    assert float(repr(float(field))) == float(field)


def test_byte_identical_reruns(tmp_path):
    outs = []
    for k, workers in enumerate(["1", "2"]):
        out = tmp_path / f"r{k}"
        assert cli.main(["run", *QKR_ARGS, "--out", str(out), "--workers", workers,
                         "--no-timing"]) == 0
        outs.append(out)
    for name in ("series.csv", "summary.json", "plot.gp"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_deterministic_walker_exponent(tmp_path):
    out = tmp_path / "o"
    args = ["--system", "qw", "--theta1", "0", "--theta2", "0", "--steps", "400",
            "--trajectories", "2", "--out", str(out), "--workers", "1"]
    assert cli.main(["run", *args]) == 0
    fit = json.loads((out / "summary.json").read_text())["fit"]
    assert fit["c"] == pytest.approx(1.0, abs=0.01)


def test_fit_window_flag(tmp_path):
    out = tmp_path / "o"
    assert cli.main(["run", *QW_ARGS, "--out", str(out), "--fit-window", "50:150",
                     "--workers", "1"]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["fit"]["window"] == [50, 150]
    assert summary["config"]["fit_window"] == [50, 150]


@pytest.mark.parametrize("argv", [
    ["run", "--system", "qkr", "--p", "2", "--q", "4", "--out", "X"],
    ["run", "--system", "qkr", "--alpha", "3", "--out", "X"],
    ["run", "--system", "qw", "--steps", "0", "--out", "X"],
    ["run", "--system", "nope", "--out", "X"],
    ["run", "--system", "qw", "--theta1", "abc", "--out", "X"],
    ["run", "--system", "qw"],
    ["sweep", "--system", "qw", "--sweep", "pq=1/3", "--out", "X"],
    ["frobnicate"],
])
def test_invalid_flags_exit_nonzero(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(argv) != 0


def test_fit_failure_exit_code(tmp_path):
    out = tmp_path / "o"
    code = cli.main(["run", *QW_ARGS, "--out", str(out), "--fit-window", "300:400",
                     "--workers", "1"])
    assert code == 3


def test_sweep(tmp_path):
    out = tmp_path / "s"
    argv = ["sweep", "--system", "qw", "--sweep", "theta=pi/8,pi/4", "--chirality", "symmetric",
            "--steps", "200", "--trajectories", "4", "--out", str(out), "--workers", "1"]
    assert cli.main(argv) == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "value,c,c_stderr,r_squared"
    assert len(lines) == 3
    summary = json.loads((out / "sweep.json").read_text())
    assert summary["config"]["sweep"]["parameter"] == "theta"
    assert (out / "sweep.gp").exists()


def test_sweep_failed_point_is_nan(tmp_path):
    out = tmp_path / "s"
    argv = ["sweep", "--system", "qkr", "--sweep", "alpha=0.5,1.0", "--steps", "100",
            "--trajectories", "2", "--fit-window", "200:300", "--out", str(out),
            "--workers", "1"]
    with pytest.warns(RuntimeWarning):
        assert cli.main(argv) == 0
    rows = (out / "sweep.csv").read_text().splitlines()[1:]
    assert all(r.endswith("nan,nan,nan") for r in rows)


def test_pq_sweep(tmp_path):
    out = tmp_path / "s"
    argv = ["sweep", "--system", "qkr", "--sweep", "pq=1/3,2/3", "--steps", "150",
            "--trajectories", "3", "--out", str(out), "--workers", "1"]
    assert cli.main(argv) == 0
    rows = [r.split(",") for r in (out / "sweep.csv").read_text().splitlines()[1:]]
    # p/q and (q-p)/q share the same spreading exponent
    assert float(rows[0][1]) == pytest.approx(float(rows[1][1]), abs=1e-9)
