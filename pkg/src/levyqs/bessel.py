"""Integer-order Bessel functions J_m(x) by Miller's backward recurrence."""

from __future__ import annotations

import math

import numpy as np

_BIG = 1e250


def _start_order(x: float, n_min: int) -> int:
    """Even starting order far enough above both ``|x|`` and ``n_min``."""
    ax = abs(x)
    n = max(n_min, int(ax)) + int(15 * ax ** (1.0 / 3.0)) + 40
    return n + (n % 2)


def bessel_j_orders(x: float, n_max: int) -> np.ndarray:
    """Return ``[J_0(x), ..., J_n_max(x)]``.

    Runs the recurrence ``J_{k-1} = (2k/x) J_k - J_{k+1}`` downward from an
    order well above ``n_max`` and normalises with
    ``J_0 + 2 * sum_k J_{2k} = 1``.
    """
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = np.zeros(n_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    sign = 1.0
    if x < 0:
        # J_m(-x) = (-1)^m J_m(x); applied at the end
        x = -x
        sign = -1.0
    start = _start_order(x, n_max)
    vals = np.zeros(start + 2)
    vals[start] = 1e-300
    for k in range(start, 0, -1):
        vals[k - 1] = (2.0 * k / x) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _BIG:
            vals[k - 1:] /= _BIG
    norm = vals[0] + 2.0 * math.fsum(vals[2:start + 1:2])
    vals /= norm
    out[:] = vals[:n_max + 1]
    if sign < 0:
        out[1::2] *= -1.0
    return out
