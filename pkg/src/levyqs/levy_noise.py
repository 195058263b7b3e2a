"""Truncated power-law waiting times and U0/U1 label sequences.

The waiting-time density is flat on ``[0, T)`` and decays as
``(T/t)**(alpha+1)`` beyond ``T``.  A waiting time ``xi`` is drawn by
inverting the closed-form CDF; its integer part ``i = floor(xi / T)`` is the
number of ``U0`` steps applied before a single ``U1`` step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

U0 = 0
U1 = 1

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class LevyParams:
    """Tail index ``alpha`` in (0, 2] and time step ``T`` (1 by default)."""

    alpha: float
    T: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 2.0):
            raise ValueError(f"alpha must lie in (0, 2], got {self.alpha!r}")
        if not (math.isfinite(self.T) and self.T > 0.0):
            raise ValueError(f"T must be positive, got {self.T!r}")

    @property
    def flat_mass(self) -> float:
        """Probability of a waiting time shorter than one step."""
        return self.alpha / (1.0 + self.alpha)


@dataclass(frozen=True)
class NoiseSequence:
    """Per-step operator labels (0 for U0, 1 for U1) in time order."""

    labels: np.ndarray
    seed: int
    alpha: float

    def __len__(self) -> int:
        return len(self.labels)

    def to_text(self) -> str:
        """Debug dump: one line of 0/1 characters, leftmost is t=1."""
        return "".join("1" if v else "0" for v in self.labels)


def density(t: float, params: LevyParams) -> float:
    if t < 0:
        raise ValueError("waiting time must be non-negative")
    a, T = params.alpha, params.T
    norm = a / ((1.0 + a) * T)
    if t < T:
        return norm
    return norm * (T / t) ** (a + 1.0)


def cdf(xi, params: LevyParams):
    """Closed-form CDF of the waiting-time density; accepts scalars or arrays."""
    a, T = params.alpha, params.T
    x = np.asarray(xi, dtype=float)
    if np.any(x < 0):
        raise ValueError("waiting time must be non-negative")
    flat = a * x / ((1.0 + a) * T)
    with np.errstate(divide="ignore"):
        tail = a / (1.0 + a) + (1.0 - (T / np.maximum(x, T)) ** a) / (1.0 + a)
    out = np.where(x < T, flat, tail)
    return float(out) if out.ndim == 0 else out


def survival(xi, params: LevyParams):
    """``1 - cdf(xi)`` evaluated without cancellation in the tail."""
    a, T = params.alpha, params.T
    x = np.asarray(xi, dtype=float)
    flat = 1.0 - a * x / ((1.0 + a) * T)
    tail = (T / np.maximum(x, T)) ** a / (1.0 + a)
    out = np.where(x < T, flat, tail)
    return float(out) if out.ndim == 0 else out


def quantile(gamma, params: LevyParams):
    """Invert the CDF: the unique ``xi`` with ``cdf(xi) == gamma``.

    Vectorised over ``gamma``; every entry must lie in ``[0, 1)``.
    """
    g = np.asarray(gamma, dtype=float)
    if np.any((g < 0.0) | (g >= 1.0)) or np.any(np.isnan(g)):
        raise ValueError("gamma must lie in [0, 1)")
    a, T = params.alpha, params.T
    knee = a / (1.0 + a)
    flat = g * (1.0 + a) * T / a
    # 1 - (1+a)(g - knee) rewritten as (1+a)(1-g): exact, no cancellation
    rest = (1.0 + a) * (1.0 - g)
    with np.errstate(divide="ignore", over="ignore"):
        tail = T * rest ** (-1.0 / a)
    out = np.where(g < knee, flat, tail)
    return float(out) if out.ndim == 0 else out


def waits_from_uniforms(gamma, params: LevyParams, cap: int | None = None) -> np.ndarray:
    """Integer waits ``floor(quantile(gamma) / T)``, optionally clipped at ``cap``.

    Clipping keeps astronomically long waits (small alpha, gamma near 1)
    representable; a wait longer than the remaining run is equivalent to any
    other such wait once the sequence is truncated.
    """
    xi = np.asarray(quantile(gamma, params)) / params.T
    if cap is not None:
        xi = np.minimum(xi, cap)
    return np.floor(xi).astype(np.int64)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def sample_waiting_steps(rng: np.random.Generator, params: LevyParams) -> int:
    """Draw one gamma from ``rng`` and return the number of U0 steps."""
    gamma = rng.random()
    return int(waits_from_uniforms(gamma, params, cap=2**62))


def labels_from_waits(waits: Iterable[int], n_steps: int) -> np.ndarray:
    """Expand waits ``i1, i2, ...`` into time-ordered labels of length ``n_steps``.

    Each wait contributes ``i`` copies of U0 followed by one U1.  Raises if
    the waits run out before ``n_steps`` labels are produced.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    labels = np.zeros(n_steps, dtype=np.int8)
    pos = 0
    for i in waits:
        if i < 0:
            raise ValueError("waits must be non-negative")
        pos += int(i)
        if pos >= n_steps:
            return labels
        labels[pos] = U1
        pos += 1
        if pos >= n_steps:
            return labels
    raise ValueError("not enough waits to fill the sequence")


def generate_sequence(seed: int, params: LevyParams, n_steps: int,
                      chunk: int = 4096) -> NoiseSequence:
    """Label sequence for one noise realisation.

    Uniforms are drawn from a Philox stream keyed by ``seed`` in fixed-size
    chunks, so the sequence depends on ``(seed, alpha, n_steps)`` only.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    rng = make_rng(seed)
    labels = np.zeros(n_steps, dtype=np.int8)
    pos = 0
    while pos < n_steps:
        waits = waits_from_uniforms(rng.random(chunk), params, cap=n_steps)
        # position of each U1 relative to the current block start
        ones = pos + np.cumsum(waits + 1) - 1
        inside = ones[ones < n_steps]
        labels[inside] = U1
        if len(inside) < len(ones):
            break
        pos = int(ones[-1]) + 1
    return NoiseSequence(labels=labels, seed=int(seed), alpha=params.alpha)


def periodic_sequence(n_steps: int, pattern: Sequence[int] = (U0, U1)) -> np.ndarray:
    """Noiseless reference: ``pattern`` repeated and truncated to ``n_steps``."""
    reps = -(-n_steps // len(pattern))
    return np.tile(np.asarray(pattern, dtype=np.int8), reps)[:n_steps]


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, index: int) -> int:
    """Trajectory seed from ``(master_seed, index)``.

    For a fixed master seed this is a bijection of ``index`` mod 2**64 (odd
    multiplier followed by the invertible splitmix64 finaliser), so two
    trajectories of one ensemble never share a stream.
    """
    base = splitmix64(int(master_seed) & _MASK64)
    return splitmix64((base + int(index) * 0xD1B54A32D192ED03) & _MASK64)
