"""Power-law exponent of sigma(t) ~ t**c by least squares in log-log space."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np


class FitError(ValueError):
    """Raised when the window does not hold enough usable points."""


@dataclass(frozen=True)
class FitResult:
    c: float
    c_stderr: float
    log_prefactor: float
    r_squared: float
    window: tuple[int, int]
    n_points: int
    column: str = "sigma_mean"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        return d


def default_window(n_steps: int) -> tuple[int, int]:
    return (max(1, n_steps // 8), n_steps)


def fit_power_law(t, y, window=None, weights=None, column: str = "") -> FitResult:
    """Fit ``ln y = ln A + c ln t`` over ``t_lo <= t <= t_hi``.

    Points with ``y == 0`` are dropped with a warning; negative ``y`` is an
    error.  ``weights`` (optional) are per-point weights on ``ln y``.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if window is None:
        window = (t.min(), t.max())
    lo, hi = window
    if not lo < hi:
        raise FitError(f"empty window {window}")
    sel = (t >= lo) & (t <= hi)
    if np.any(y[sel] < 0) or np.any(~np.isfinite(y[sel])):
        raise FitError("negative or non-finite values inside the fit window")
    zero = sel & (y == 0)
    if zero.any():
        warnings.warn(f"dropping {int(zero.sum())} zero-valued points from the fit",
                      RuntimeWarning, stacklevel=2)
        sel &= ~zero
    n = int(sel.sum())
    if n < 3:
        raise FitError(f"need at least 3 points in window {window}, got {n}")
    x = np.log(t[sel])
    z = np.log(y[sel])
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)[sel]
    sw = w.sum()
    xm = np.dot(w, x) / sw
    zm = np.dot(w, z) / sw
    sxx = np.dot(w, (x - xm) ** 2)
    slope = np.dot(w, (x - xm) * (z - zm)) / sxx
    icpt = zm - slope * xm
    resid = z - icpt - slope * x
    ss_res = float(np.dot(w, resid ** 2))
    ss_tot = float(np.dot(w, (z - zm) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    stderr = math.sqrt(ss_res / (n - 2) / sxx) if n > 2 else float("nan")
    return FitResult(
        c=float(slope),
        c_stderr=stderr,
        log_prefactor=float(icpt),
        r_squared=float(min(max(r2, 0.0), 1.0)),
        window=(int(lo), int(hi)),
        n_points=n,
        column=column,
    )


def fit_exponent(series, window=None, column: str = "sigma_mean",
                 weighted: bool = False) -> FitResult:
    """Fit the exponent of one column of a :class:`MomentSeries`.

    The default window is the last seven eighths of the run,
    ``[n_steps // 8, n_steps]``.  ``weighted=True`` weights each point by
    ``(sigma / stderr)**2``, only meaningful for ``sigma_mean``.
    """
    t = series.times
    y = series.column(column)
    if window is None:
        window = default_window(int(t[-1]))
    weights = None
    if weighted:
        if column != "sigma_mean":
            raise ValueError("weighted fits need the sigma_mean column")
        with np.errstate(divide="ignore"):
            w = (series.sigma_mean / series.sigma_stderr) ** 2
        weights = np.where(np.isfinite(w), w, 0.0)
    return fit_power_law(t, y, window, weights, column)
