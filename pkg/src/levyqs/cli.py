"""Command-line front end: ``levyqs run`` and ``levyqs sweep``.

``run`` evolves one ensemble and writes ``series.csv``, ``summary.json`` and
``plot.gp`` to ``--out``.  ``sweep`` repeats the experiment over a list of
alpha, theta or p/q values and writes ``sweep.csv``, ``sweep.json`` and
``sweep.gp``.
"""

from __future__ import annotations

import argparse
import logging
import math
import re
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path


from . import output
from .ensemble import ExperimentConfig, default_schedule, run_ensemble
from .fit import FitError, default_window, fit_exponent
from .levy_noise import LevyParams
from .qkr import PhaseConvention, ResonanceParams
from .qw import Chirality, CoinParams

log = logging.getLogger("levyqs")

_PI_RE = re.compile(
    r"^\s*([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Radians from ``'0.5'``, ``'pi/3'``, ``'-3*pi/8'`` or ``'2pi/3'``."""
    m = _PI_RE.match(text.lower())
    if m:
        sign, num, den = m.groups()
        value = Fraction(num or "1") / Fraction(den or "1")
        angle = float(value) * math.pi
        return -angle if sign == "-" else angle
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("fit window must look like LO:HI") from None
    if not 1 <= lo < hi:
        raise argparse.ArgumentTypeError("fit window needs 1 <= LO < HI")
    return lo, hi


def parse_values(parameter: str, text: str) -> list:
    """Sweep values from ``a,b,c`` or an inclusive ``start:stop:step`` range."""
    if parameter == "pq":
        vals = []
        for tok in text.split(","):
            p, _, q = tok.strip().partition("/")
            vals.append((int(p), int(q or 1)))
        return vals
    conv = parse_angle if parameter == "theta" else float
    if ":" in text:
        start, stop, step = (conv(v) for v in text.split(":"))
        if step <= 0:
            raise UsageError("range step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        vals = [start + k * step for k in range(n)]
        # decimal alpha grids: strip float drift such as 0.6000000000000001
        return [round(v, 12) for v in vals] if parameter == "alpha" else vals
    return [conv(v) for v in text.split(",")]


def parse_sweep(text: str) -> tuple[str, list]:
    parameter, eq, values = text.partition("=")
    parameter = parameter.strip()
    if not eq or parameter not in ("alpha", "theta", "pq"):
        raise argparse.ArgumentTypeError("sweep must look like alpha=..., theta=... or pq=...")
    try:
        vals = parse_values(parameter, values)
    except (ValueError, UsageError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not vals:
        raise argparse.ArgumentTypeError("sweep has no values")
    for v in vals:
        if parameter == "alpha" and not 0 < v <= 2:
            raise argparse.ArgumentTypeError(f"alpha {v} outside (0, 2]")
        if parameter == "theta" and not 0 <= v < math.pi / 2:
            raise argparse.ArgumentTypeError(f"theta {v} outside [0, pi/2)")
        if parameter == "pq" and (v[0] < 1 or v[1] < 1 or math.gcd(*v) != 1):
            raise argparse.ArgumentTypeError(f"p/q {v[0]}/{v[1]} is not a valid coprime pair")
    return parameter, vals


def build_parser(sweep: bool) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="levyqs sweep" if sweep else "levyqs run",
        description="Kicked rotor / quantum walk under Levy waiting-time noise.")
    ap.add_argument("--system", choices=("qkr", "qw"), required=True)
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--trajectories", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--workers", type=int, default=None,
                    help="worker processes (default: $LEVY_SIM_WORKERS or all cores)")
    ap.add_argument("--fit-window", type=parse_window, default=None)
    ap.add_argument("--fit-column", choices=("sigma_mean", "rms_sigma"), default="sigma_mean")
    ap.add_argument("--weighted", action="store_true", help="stderr-weighted fit")
    ap.add_argument("--record", choices=("geometric", "all"), default="geometric")
    ap.add_argument("--no-timing", action="store_true",
                    help="write runtime_seconds as null so reruns are byte-identical")
    qkr = ap.add_argument_group("kicked rotor")
    qkr.add_argument("--p", type=int, default=1)
    qkr.add_argument("--q", type=int, default=3)
    qkr.add_argument("--kappa1", type=float, default=1.0)
    qkr.add_argument("--kappa2", type=float, default=-1.0)
    qkr.add_argument("--phase-convention", choices=[c.value for c in PhaseConvention],
                     default="standard")
    qw = ap.add_argument_group("quantum walk")
    qw.add_argument("--theta1", type=parse_angle, default=math.pi / 3)
    qw.add_argument("--theta2", type=parse_angle, default=math.pi / 6)
    qw.add_argument("--chirality", choices=[c.value for c in Chirality], default="plus")
    if sweep:
        ap.add_argument("--sweep", type=parse_sweep, required=True,
                        help="alpha=0.2:2.0:0.2, theta=pi/8,pi/4 or pq=1/3,1/4")
    return ap


def make_config(args, **override) -> ExperimentConfig:
    a = dict(vars(args), **override)
    if a["system"] == "qkr":
        params = ResonanceParams(a["p"], a["q"], a["kappa1"], a["kappa2"], a["phase_convention"])
    else:
        params = CoinParams(a["theta1"], a["theta2"], a["chirality"])
    return ExperimentConfig(
        system=a["system"], params=params, levy=LevyParams(a["alpha"]),
        n_steps=a["steps"], n_trajectories=a["trajectories"], master_seed=a["seed"],
        record_schedule=default_schedule(a["steps"], a["record"]),
    )


def config_dict(config: ExperimentConfig, args) -> dict:
    p = config.params
    if config.system == "qkr":
        params = {"p": p.p, "q": p.q, "kappa1": p.kappa1, "kappa2": p.kappa2,
                  "phase_convention": p.phase_convention.value}
    else:
        params = {"theta1": p.theta1, "theta2": p.theta2,
                  "chirality": p.initial_chirality.value}
    return {
        "system": config.system,
        "params": params,
        "alpha": config.levy.alpha,
        "T": config.levy.T,
        "n_steps": config.n_steps,
        "n_trajectories": config.n_trajectories,
        "master_seed": config.master_seed,
        "record": args.record,
        "record_schedule": list(config.record_schedule),
        "fit_window": list(args.fit_window or default_window(config.n_steps)),
        "fit_column": args.fit_column,
        "weighted_fit": args.weighted,
        "initial_state": "|0>",
    }


def _fit(series, args):
    return fit_exponent(series, args.fit_window, args.fit_column, args.weighted)


def _parse(parser, argv):
    try:
        return parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


def run_experiment_command(argv=None) -> int:
    args = _parse(build_parser(sweep=False), argv)
    if isinstance(args, int):
        return args
    try:
        config = make_config(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    series = run_ensemble(config, args.workers)
    elapsed = time.perf_counter() - t0
    try:
        fit = _fit(series, args)
    except FitError as exc:
        print(f"error: fit failed: {exc}", file=sys.stderr)
        return 3
    extra = {}
    for col in ("rms_sigma", "m4_root", "m6_root"):
        try:
            extra[col] = fit_exponent(series, args.fit_window, col).as_dict()
        except FitError:
            extra[col] = None
    args.out.mkdir(parents=True, exist_ok=True)
    output.write_text(args.out / "series.csv", output.series_csv(series))
    summary = {
        "config": config_dict(config, args),
        "fit": fit.as_dict(),
        "moment_fits": extra,
        "runtime_seconds": None if args.no_timing else round(elapsed, 3),
        "versions": output.versions(),
    }
    output.write_text(args.out / "summary.json", output.dump_json(summary))
    output.write_text(args.out / "plot.gp", output.series_plot_script(
        "series.csv", fit, f"{config.system}  alpha={config.levy.alpha}"))
    print(f"c = {fit.c:.4f} +/- {fit.c_stderr:.4f}  (r^2 = {fit.r_squared:.4f}, "
          f"window {fit.window[0]}:{fit.window[1]})")
    return 0


def _sweep_override(parameter, value) -> dict:
    if parameter == "alpha":
        return {"alpha": value}
    if parameter == "theta":
        return {"theta1": value, "theta2": -value}
    return {"p": value[0], "q": value[1]}


def run_sweep_command(argv=None) -> int:
    args = _parse(build_parser(sweep=True), argv)
    if isinstance(args, int):
        return args
    parameter, values = args.sweep
    if parameter == "pq" and args.system != "qkr":
        print("error: pq sweeps need --system qkr", file=sys.stderr)
        return 2
    if parameter == "theta" and args.system != "qw":
        print("error: theta sweeps need --system qw", file=sys.stderr)
        return 2
    try:
        make_config(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows, points = [], []
    t0 = time.perf_counter()
    for value in values:
        label = f"{value[0]}/{value[1]}" if parameter == "pq" else value
        try:
            config = make_config(args, **_sweep_override(parameter, value))
            fit = _fit(run_ensemble(config, args.workers), args)
        except (ValueError, TypeError) as exc:  # FitError is a ValueError
            warnings.warn(f"sweep point {parameter}={label} failed: {exc}", RuntimeWarning)
            log.warning("sweep point %s=%s failed: %s", parameter, label, exc)
            fit = None
        x = value[0] / value[1] if parameter == "pq" else value
        rows.append((x, fit))
        points.append({"value": label, "fit": fit.as_dict() if fit else None})
        c = "nan" if fit is None else f"{fit.c:.4f} +/- {fit.c_stderr:.4f}"
        print(f"{parameter}={label}: c = {c}")
    elapsed = time.perf_counter() - t0
    args.out.mkdir(parents=True, exist_ok=True)
    output.write_text(args.out / "sweep.csv", output.sweep_csv(rows))
    base = config_dict(make_config(args), args)
    summary = {
        "config": dict(base, sweep={"parameter": parameter, "values": [p["value"] for p in points]}),
        "points": points,
        "runtime_seconds": None if args.no_timing else round(elapsed, 3),
        "versions": output.versions(),
    }
    output.write_text(args.out / "sweep.json", output.dump_json(summary))
    output.write_text(args.out / "sweep.gp", output.sweep_plot_script("sweep.csv", parameter))
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    if not argv or argv[0] in ("-h", "--help"):
        print("usage: levyqs {run,sweep} [options]\n"
              "  run    one ensemble experiment\n"
              "  sweep  repeat over alpha, theta or p/q values")
        return 0 if argv else 2
    cmd, rest = argv[0], argv[1:]
    if cmd == "run":
        return run_experiment_command(rest)
    if cmd == "sweep":
        return run_sweep_command(rest)
    print(f"error: unknown command {cmd!r}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
