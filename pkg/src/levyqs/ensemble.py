"""Ensembles of noise realisations and their moment statistics."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .levy_noise import LevyParams, generate_sequence, mix_seed, periodic_sequence
from .qkr import ResonanceParams, RotorSystem
from .qw import CoinParams, WalkerSystem

log = logging.getLogger(__name__)

SYSTEMS = ("qkr", "qw")


def default_schedule(n_steps: int, mode: str = "geometric") -> tuple[int, ...]:
    """Recording times in ``[1, n_steps]``.

    ``geometric``: every step up to 16, then ``round(16 * 1.1**k)``, with
    ``n_steps`` itself always included.  ``all``: every step.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if mode == "all":
        return tuple(range(1, n_steps + 1))
    if mode != "geometric":
        raise ValueError(f"unknown schedule mode {mode!r}")
    times = set(range(1, min(16, n_steps) + 1))
    k = 1
    while True:
        t = int(round(16 * 1.1 ** k))
        if t > n_steps:
            break
        times.add(t)
        k += 1
    times.add(n_steps)
    return tuple(sorted(times))


@dataclass(frozen=True)
class ExperimentConfig:
    system: str
    params: Union[ResonanceParams, CoinParams]
    levy: LevyParams
    n_steps: int
    n_trajectories: int = 1
    master_seed: int = 0
    record_schedule: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"system must be one of {SYSTEMS}")
        expected = ResonanceParams if self.system == "qkr" else CoinParams
        if not isinstance(self.params, expected):
            raise TypeError(f"{self.system} needs {expected.__name__}")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")
        sched = tuple(int(t) for t in self.record_schedule) or default_schedule(self.n_steps)
        if list(sched) != sorted(set(sched)):
            raise ValueError("record_schedule must be strictly increasing")
        if sched[0] < 1 or sched[-1] > self.n_steps:
            raise ValueError("record_schedule must lie within [1, n_steps]")
        object.__setattr__(self, "record_schedule", sched)

    def build_system(self):
        if self.system == "qkr":
            return RotorSystem(self.params)
        return WalkerSystem(self.params)

    def record_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_steps, dtype=bool)
        mask[np.asarray(self.record_schedule) - 1] = True
        return mask

    def trajectory_seed(self, index: int) -> int:
        return mix_seed(self.master_seed, index)


@dataclass
class MomentSeries:
    """Moments at the recorded times, averaged over ``n_trajectories``."""

    times: np.ndarray
    sigma_mean: np.ndarray
    sigma_stderr: np.ndarray
    rms_sigma: np.ndarray
    m2_mean: np.ndarray
    m4_mean: np.ndarray
    m6_mean: np.ndarray
    n_trajectories: int = 1

    COLUMNS = ("sigma_mean", "rms_sigma", "m4_root", "m6_root")

    def column(self, name: str) -> np.ndarray:
        """Length-like observable to fit: ``m4_root`` is ``m4_mean**(1/4)``, etc."""
        if name == "m4_root":
            return self.m4_mean ** 0.25
        if name == "m6_root":
            return self.m6_mean ** (1.0 / 6.0)
        if name in ("sigma_mean", "rms_sigma"):
            return getattr(self, name)
        raise ValueError(f"unknown column {name!r}; choose from {self.COLUMNS}")

    @classmethod
    def from_moments(cls, times, moments: np.ndarray) -> "MomentSeries":
        """Aggregate an array of shape ``(n_traj, n_times, 3)`` of ``(m2, m4, m6)``."""
        moments = np.asarray(moments, dtype=float)
        n = moments.shape[0]
        sig = np.sqrt(moments[:, :, 0])
        mean = moments.mean(axis=0)
        stderr = sig.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(sig.shape[1])
        return cls(
            times=np.asarray(times, dtype=np.int64),
            sigma_mean=sig.mean(axis=0),
            sigma_stderr=stderr,
            rms_sigma=np.sqrt(mean[:, 0]),
            m2_mean=mean[:, 0],
            m4_mean=mean[:, 1],
            m6_mean=mean[:, 2],
            n_trajectories=n,
        )


def _trajectory_moments(config: ExperimentConfig, index: int, system=None) -> np.ndarray:
    system = system or config.build_system()
    seq = generate_sequence(config.trajectory_seed(index), config.levy, config.n_steps)
    out, _ = system.run(seq.labels, config.record_mask())
    return out


def run_trajectory(config: ExperimentConfig, trajectory_index: int) -> MomentSeries:
    out = _trajectory_moments(config, trajectory_index)
    return MomentSeries.from_moments(config.record_schedule, out[None])


def run_labels(config: ExperimentConfig, labels: Sequence[int]) -> MomentSeries:
    """Single deterministic run through an explicit label sequence."""
    labels = np.asarray(labels)
    if len(labels) != config.n_steps:
        raise ValueError("label sequence length must equal n_steps")
    out, _ = config.build_system().run(labels, config.record_mask())
    return MomentSeries.from_moments(config.record_schedule, out[None])


def run_periodic(config: ExperimentConfig, pattern: Sequence[int] = (0, 1)) -> MomentSeries:
    """Noiseless reference run with ``pattern`` repeated periodically."""
    return run_labels(config, periodic_sequence(config.n_steps, pattern))


def _chunk(args):
    config, indices = args
    system = config.build_system()
    return np.stack([_trajectory_moments(config, i, system) for i in indices])


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("LEVY_SIM_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def run_ensemble(config: ExperimentConfig, workers: int | None = None,
                 chunk_size: int = 16) -> MomentSeries:
    """Run all trajectories and aggregate them in trajectory-index order.

    The result depends only on ``config``: work is split into fixed index
    chunks and reassembled by index before any reduction.
    """
    workers = resolve_workers(workers)
    n = config.n_trajectories
    chunks = [(config, range(s, min(s + chunk_size, n))) for s in range(0, n, chunk_size)]
    if workers == 1 or len(chunks) == 1:
        parts = [_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, chunks))
    moments = np.concatenate(parts, axis=0)
    log.debug("ensemble of %d trajectories done", n)
    return MomentSeries.from_moments(config.record_schedule, moments)
