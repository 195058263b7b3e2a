"""Resonant quantum kicked rotor in the angular-momentum basis.

One period of the map multiplies each amplitude by the free-rotation phase
and then convolves with the kick row ``c_m = i**(-m) J_m(kappa)``::

    a'_l = sum_m c_m * phase(l + m) * a_{l+m}

At resonance the phase only depends on ``l**2 mod q``, so it is read from a
table of ``q`` entries and never evaluated at large angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numba import njit

from .bessel import bessel_j_orders

BOUNDARY_TOL = 1e-14


class PhaseConvention(str, Enum):
    STANDARD = "standard"          # exp(-2 pi i (p/q) l^2)
    PAPER_LITERAL = "paper_literal"  # exp(-8 pi i (p/q) l^2)


@dataclass(frozen=True)
class ResonanceParams:
    p: int
    q: int
    kappa1: float
    kappa2: float
    phase_convention: PhaseConvention = PhaseConvention.STANDARD

    def __post_init__(self):
        if self.q < 1 or self.p < 1:
            raise ValueError("p and q must be positive integers")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p/q = {self.p}/{self.q} is not in lowest terms")
        if not (math.isfinite(self.kappa1) and math.isfinite(self.kappa2)):
            raise ValueError("kick strengths must be finite")
        object.__setattr__(self, "phase_convention",
                           PhaseConvention(self.phase_convention))

    @property
    def is_primary(self) -> bool:
        return self.q == 1

    def phase_table(self) -> np.ndarray:
        """``phase[r]`` for ``r = l**2 mod q``."""
        k = 1 if self.phase_convention is PhaseConvention.STANDARD else 4
        r = np.arange(self.q)
        return np.exp(-2j * np.pi * ((k * self.p * r) % self.q) / self.q)


@dataclass(frozen=True)
class KickKernel:
    """Convolution row ``c_m`` for ``m = -M..M`` stored at index ``m + M``."""

    coefficients: np.ndarray
    bandwidth: int
    kappa: float
    bessel: np.ndarray = field(repr=False)  # J_m(kappa), same layout


def bessel_j_row(kappa: float, tol: float = 1e-16, margin: int = 5) -> KickKernel:
    """Kick kernel truncated where ``|J_m(kappa)|`` drops below ``tol``.

    The bandwidth is the last order with ``|J_m| >= tol`` plus ``margin``;
    ``kappa == 0`` gives the identity kernel with bandwidth 0.
    """
    if not math.isfinite(kappa):
        raise ValueError("kappa must be finite")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if kappa == 0.0:
        one = np.ones(1)
        return KickKernel(one.astype(complex), 0, 0.0, one)
    ak = abs(kappa)
    n_hi = int(ak + 15 * ak ** (1.0 / 3.0)) + 40
    jpos = bessel_j_orders(kappa, n_hi)
    big = np.nonzero(np.abs(jpos) >= tol)[0]
    M = int(big[-1]) + margin
    if M > n_hi:
        jpos = bessel_j_orders(kappa, M)
    jpos = jpos[:M + 1]
    m = np.arange(-M, M + 1)
    j = np.concatenate([((-1.0) ** np.arange(M, 0, -1)) * jpos[M:0:-1], jpos])
    # i**(-m) cycles through 1, -i, -1, i
    ipow = np.array([1, -1j, -1, 1j])[m % 4]
    return KickKernel(ipow * j, M, float(kappa), j)


def resonance_phase(ell, params: ResonanceParams):
    """Free-rotation phase factor for momentum index ``ell`` (scalar or array)."""
    ell = np.asarray(ell, dtype=np.int64)
    out = params.phase_table()[(ell * ell) % params.q]
    return complex(out) if out.ndim == 0 else out


@dataclass
class RotorState:
    """Amplitudes ``a_l`` for ``l = -offset..offset``."""

    amplitudes: np.ndarray
    offset: int
    time: int = 0

    @classmethod
    def localized(cls, half_width: int) -> "RotorState":
        """The momentum eigenstate ``|0>`` on a lattice of half-width ``half_width``."""
        a = np.zeros(2 * half_width + 1, dtype=np.complex128)
        a[half_width] = 1.0
        return cls(a, half_width, 0)

    @property
    def ell(self) -> np.ndarray:
        return np.arange(-self.offset, self.offset + 1)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_text(self) -> str:
        """Snapshot rows ``l, Re(a_l), Im(a_l)``."""
        rows = [f"{l}, {a.real:.17g}, {a.imag:.17g}"
                for l, a in zip(self.ell, self.amplitudes)]
        return "\n".join(rows) + "\n"


@njit(cache=True)
def _edge_mass(a, lo, hi, width):
    s = 0.0
    for j in range(lo, min(lo + width, hi + 1)):
        s += a[j].real ** 2 + a[j].imag ** 2
    for j in range(max(hi - width + 1, lo), hi + 1):
        s += a[j].real ** 2 + a[j].imag ** 2
    return s


@njit(cache=True)
def _apply_phase(a, lo, hi, center, phases, q):
    for j in range(lo, hi + 1):
        l = j - center
        a[j] *= phases[(l * l) % q]


@njit(cache=True)
def _convolve(a, out, lo, hi, coeffs, M):
    # out[j] = sum_m coeffs[m + M] * a[j + m], restricted to [lo, hi]
    for j in range(lo, hi + 1):
        mlo = max(-M, lo - j)
        mhi = min(M, hi - j)
        s = 0j
        for m in range(mlo, mhi + 1):
            s += coeffs[m + M] * a[j + m]
        out[j] = s


@njit(cache=True)
def _moments(a, lo, hi, center):
    m2 = 0.0
    m4 = 0.0
    m6 = 0.0
    for j in range(lo, hi + 1):
        p = a[j].real ** 2 + a[j].imag ** 2
        if p == 0.0:
            continue
        l2 = float(j - center) ** 2
        m2 += l2 * p
        m4 += l2 * l2 * p
        m6 += l2 * l2 * l2 * p
    return m2, m4, m6


@njit(cache=True)
def _run_rotor(labels, coeffs, M, phases, q, half0, record, tol):
    """Evolve |0> under ``labels``; return moments at the flagged steps.

    ``coeffs`` has one kernel row per label value, padded to bandwidth ``M``.
    The active window starts at half-width ``half0`` and grows by ``M`` when
    the mass in its outer ``2M`` sites exceeds ``tol``.
    """
    n = labels.shape[0]
    cap = half0 + M * n + 1
    size = 2 * cap + 1
    a = np.zeros(size, dtype=np.complex128)
    b = np.zeros(size, dtype=np.complex128)
    center = cap
    a[center] = 1.0
    L = half0
    n_rec = 0
    for t in range(n):
        if record[t]:
            n_rec += 1
    out = np.zeros((n_rec, 4))
    k = 0
    for t in range(n):
        while M > 0 and L + M <= cap and _edge_mass(a, center - L, center + L, 2 * M) > tol:
            L += M
        lo = center - L
        hi = center + L
        _apply_phase(a, lo, hi, center, phases, q)
        _convolve(a, b, lo, hi, coeffs[labels[t]], M)
        a, b = b, a
        if record[t]:
            m2, m4, m6 = _moments(a, lo, hi, center)
            out[k, 0] = m2
            out[k, 1] = m4
            out[k, 2] = m6
            out[k, 3] = L
            k += 1
    return out, a[center - L:center + L + 1].copy(), L


def _pad(kernel: KickKernel, M: int) -> np.ndarray:
    row = np.zeros(2 * M + 1, dtype=np.complex128)
    d = M - kernel.bandwidth
    row[d:d + 2 * kernel.bandwidth + 1] = kernel.coefficients
    return row


def qkr_step(state: RotorState, kernel: KickKernel, params: ResonanceParams,
             tol: float = BOUNDARY_TOL) -> RotorState:
    """Apply one period of the map; returns a new state, the input is untouched."""
    M = kernel.bandwidth
    a = state.amplitudes
    L = state.offset
    while M > 0 and _edge_mass(a, 0, 2 * L, 2 * M) > tol:
        a = np.concatenate([np.zeros(M, complex), a, np.zeros(M, complex)])
        L += M
    a = a.astype(np.complex128, copy=True)
    out = np.empty_like(a)
    _apply_phase(a, 0, 2 * L, L, params.phase_table(), params.q)
    _convolve(a, out, 0, 2 * L, kernel.coefficients, M)
    return RotorState(out, L, state.time + 1)


def rotor_moments(state: RotorState) -> tuple[float, float, float]:
    """``(m2, m4, m6)`` with ``m_k = sum_l l**k |a_l|**2``; sigma is ``sqrt(m2)``."""
    return _moments(state.amplitudes, 0, 2 * state.offset, state.offset)


class RotorSystem:
    """Pair of kick kernels ``U0 = U(kappa1)``, ``U1 = U(kappa2)`` at one resonance."""

    def __init__(self, params: ResonanceParams, tol: float = 1e-16):
        self.params = params
        self.kernels = (bessel_j_row(params.kappa1, tol), bessel_j_row(params.kappa2, tol))
        self.bandwidth = max(k.bandwidth for k in self.kernels)
        self.coeffs = np.stack([_pad(k, self.bandwidth) for k in self.kernels])
        self.phases = params.phase_table()

    def kernel(self, label: int) -> KickKernel:
        return self.kernels[label]

    def step(self, state: RotorState, label: int) -> RotorState:
        return qkr_step(state, self.kernels[label], self.params)

    def initial_state(self) -> RotorState:
        return RotorState.localized(max(4 * self.bandwidth, 1))

    def run(self, labels: np.ndarray, record: np.ndarray) -> tuple[np.ndarray, RotorState]:
        """Evolve ``|0>`` through ``labels``.

        ``record`` is a boolean mask over steps; returns an array with one
        row ``(m2, m4, m6)`` per flagged step, and the final state.
        """
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        record = np.ascontiguousarray(record, dtype=np.bool_)
        half0 = max(4 * self.bandwidth, 1)
        out, amps, L = _run_rotor(labels, self.coeffs, self.bandwidth, self.phases,
                                  self.params.q, half0, record, BOUNDARY_TOL)
        return out[:, :3], RotorState(amps, int(L), len(labels))
