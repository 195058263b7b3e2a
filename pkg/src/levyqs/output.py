"""CSV, JSON and gnuplot writers for experiment results."""

from __future__ import annotations

import json
import math
import platform
from pathlib import Path

import numpy as np

SERIES_HEADER = "t,sigma_mean,sigma_stderr,rms_sigma,m2_mean,m4_mean,m6_mean"
SWEEP_HEADER = "value,c,c_stderr,r_squared"


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def series_csv(series) -> str:
    cols = [series.times, series.sigma_mean, series.sigma_stderr, series.rms_sigma,
            series.m2_mean, series.m4_mean, series.m6_mean]
    lines = [SERIES_HEADER]
    for row in zip(*cols):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def read_series_csv(path):
    """Load a series CSV back into a dict of arrays keyed by column name."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    return {name: np.atleast_1d(data[name]) for name in data.dtype.names}


def sweep_csv(rows) -> str:
    lines = [SWEEP_HEADER]
    for value, fit in rows:
        if fit is None:
            lines.append(f"{fmt(value)},nan,nan,nan")
        else:
            lines.append(",".join(fmt(v) for v in (value, fit.c, fit.c_stderr, fit.r_squared)))
    return "\n".join(lines) + "\n"


def versions() -> dict:
    from . import __version__
    return {"levyqs": __version__, "numpy": np.__version__,
            "python": platform.python_version()}


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def series_plot_script(csv_name: str, fit, title: str = "") -> str:
    """Log-log plot of sigma(t) with the fitted power law overlaid."""
    lo, hi = fit.window
    return "\n".join([
        "# gnuplot script; run with: gnuplot -persist plot.gp",
        "set datafile separator ','",
        "set logscale xy",
        "set xlabel 't (units of T)'",
        "set ylabel 'sigma(t)'",
        f"set title '{title}'",
        "set key top left",
        f"A = {fmt(math.exp(fit.log_prefactor))}",
        f"c = {fmt(fit.c)}",
        f"f(x) = (x >= {lo} && x <= {hi}) ? A * x**c : 1/0",
        f"plot '{csv_name}' using 1:2 skip 1 with points pt 7 ps 0.5 title 'sigma', \\",
        f"     f(x) with lines lw 2 title sprintf('fit c = %.3f', c)",
        "",
    ])


def sweep_plot_script(csv_name: str, parameter: str) -> str:
    return "\n".join([
        "# gnuplot script; run with: gnuplot -persist sweep.gp",
        "set datafile separator ','",
        f"set xlabel '{parameter}'",
        "set ylabel 'c'",
        "set yrange [0:1.2]",
        f"plot '{csv_name}' using 1:2:3 skip 1 with yerrorbars pt 7 title 'c', \\",
        "     0.5 with lines dt 2 notitle, 1.0 with lines dt 2 notitle",
        "",
    ])


def write_text(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")
