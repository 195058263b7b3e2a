"""Coined quantum walk on the line with a per-step choice of coin angle.

One step applies ``K(theta) = sigma_z exp(-i theta sigma_y)`` to the chirality
pair ``(a_i, b_i)`` (left, right) at every site, then moves the left component
one site to the left and the right component one site to the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit


class Chirality(str, Enum):
    PLUS = "plus"            # (1, 0)
    SYMMETRIC = "symmetric"  # (1, i) / sqrt(2)

    def vector(self) -> tuple[complex, complex]:
        if self is Chirality.PLUS:
            return (1.0 + 0j, 0j)
        r = 1.0 / math.sqrt(2.0)
        return (r + 0j, 1j * r)


@dataclass(frozen=True)
class CoinParams:
    theta1: float
    theta2: float
    initial_chirality: Chirality = Chirality.PLUS

    def __post_init__(self):
        if not (math.isfinite(self.theta1) and math.isfinite(self.theta2)):
            raise ValueError("coin angles must be finite")
        object.__setattr__(self, "initial_chirality", Chirality(self.initial_chirality))


def coin_matrix(theta: float) -> np.ndarray:
    """``sigma_z @ expm(-1j * theta * sigma_y)`` acting on ``(L, R)``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [-s, -c]], dtype=np.complex128)


@dataclass
class WalkerState:
    """Left/right amplitudes on sites ``-offset..offset``."""

    left: np.ndarray
    right: np.ndarray
    offset: int
    time: int = 0

    @classmethod
    def localized(cls, half_width: int,
                  chirality: Chirality | tuple = Chirality.PLUS) -> "WalkerState":
        if isinstance(chirality, (Chirality, str)):
            chirality = Chirality(chirality).vector()
        a = np.zeros(2 * half_width + 1, dtype=np.complex128)
        b = np.zeros_like(a)
        a[half_width], b[half_width] = chirality
        return cls(a, b, half_width, 0)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.offset, self.offset + 1)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.left) ** 2 + np.abs(self.right) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities()))

    def to_text(self) -> str:
        """Snapshot rows ``i, Re(a_i), Im(a_i), Re(b_i), Im(b_i)``."""
        rows = [f"{i}, {a.real:.17g}, {a.imag:.17g}, {b.real:.17g}, {b.imag:.17g}"
                for i, a, b in zip(self.sites, self.left, self.right)]
        return "\n".join(rows) + "\n"


@njit(cache=True)
def _walk_step(a, b, na, nb, lo, hi, c, s):
    # coin on sites lo..hi, left movers land at j-1, right movers at j+1
    for j in range(lo - 1, hi + 2):
        na[j] = 0j
        nb[j] = 0j
    for j in range(lo, hi + 1):
        x = a[j]
        y = b[j]
        na[j - 1] = c * x - s * y
        nb[j + 1] = -s * x - c * y


@njit(cache=True)
def _walk_moments(a, b, lo, hi, center):
    m2 = 0.0
    m4 = 0.0
    m6 = 0.0
    for j in range(lo, hi + 1):
        p = a[j].real ** 2 + a[j].imag ** 2 + b[j].real ** 2 + b[j].imag ** 2
        x2 = float(j - center) ** 2
        m2 += x2 * p
        m4 += x2 * x2 * p
        m6 += x2 * x2 * x2 * p
    return m2, m4, m6


@njit(cache=True)
def _run_walker(labels, cs, a0, b0, record):
    n = labels.shape[0]
    center = n + 1
    size = 2 * center + 1
    a = np.zeros(size, dtype=np.complex128)
    b = np.zeros(size, dtype=np.complex128)
    na = np.zeros(size, dtype=np.complex128)
    nb = np.zeros(size, dtype=np.complex128)
    a[center] = a0
    b[center] = b0
    n_rec = 0
    for t in range(n):
        if record[t]:
            n_rec += 1
    out = np.zeros((n_rec, 3))
    k = 0
    for t in range(n):
        c = cs[labels[t], 0]
        s = cs[labels[t], 1]
        # support after t steps is inside |i| <= t
        _walk_step(a, b, na, nb, center - t, center + t, c, s)
        a, na = na, a
        b, nb = nb, b
        if record[t]:
            m2, m4, m6 = _walk_moments(a, b, center - t - 1, center + t + 1, center)
            out[k, 0] = m2
            out[k, 1] = m4
            out[k, 2] = m6
            k += 1
    lo = center - n
    hi = center + n
    return out, a[lo:hi + 1].copy(), b[lo:hi + 1].copy()


def qw_step(state: WalkerState, theta: float) -> WalkerState:
    """One coin-then-shift step; the lattice widens by one site per side if needed."""
    a, b, L = state.left, state.right, state.offset
    if abs(a[0]) > 0 or abs(b[0]) > 0 or abs(a[-1]) > 0 or abs(b[-1]) > 0:
        a = np.pad(a, 1)
        b = np.pad(b, 1)
        L += 1
    na = np.zeros_like(a, dtype=np.complex128)
    nb = np.zeros_like(na)
    c, s = math.cos(theta), math.sin(theta)
    _walk_step(np.ascontiguousarray(a, np.complex128), np.ascontiguousarray(b, np.complex128),
               na, nb, 1, 2 * L - 1, c, s)
    return WalkerState(na, nb, L, state.time + 1)


def walker_moments(state: WalkerState) -> tuple[float, float, float]:
    """``(m2, m4, m6)`` with ``m_k = sum_i i**k (|a_i|**2 + |b_i|**2)``."""
    return _walk_moments(state.left, state.right, 0, 2 * state.offset, state.offset)


class WalkerSystem:
    """Coin pair ``U0 = U(theta1)``, ``U1 = U(theta2)`` and the initial chirality."""

    def __init__(self, params: CoinParams):
        self.params = params
        self.cs = np.array([[math.cos(params.theta1), math.sin(params.theta1)],
                            [math.cos(params.theta2), math.sin(params.theta2)]])

    def theta(self, label: int) -> float:
        return self.params.theta2 if label else self.params.theta1

    def step(self, state: WalkerState, label: int) -> WalkerState:
        return qw_step(state, self.theta(label))

    def initial_state(self) -> WalkerState:
        return WalkerState.localized(1, self.params.initial_chirality)

    def run(self, labels: np.ndarray, record: np.ndarray) -> tuple[np.ndarray, WalkerState]:
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        record = np.ascontiguousarray(record, dtype=np.bool_)
        a0, b0 = self.params.initial_chirality.vector()
        out, a, b = _run_walker(labels, self.cs, a0, b0, record)
        return out, WalkerState(a, b, len(labels), len(labels))
