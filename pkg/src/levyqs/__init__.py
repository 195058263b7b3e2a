"""Resonant kicked rotor and coined quantum walk under Levy waiting-time noise."""

__version__ = "0.1.0"

from .ensemble import (
    ExperimentConfig,
    MomentSeries,
    default_schedule,
    run_ensemble,
    run_labels,
    run_periodic,
    run_trajectory,
)
from .fit import FitError, FitResult, fit_exponent, fit_power_law
from .levy_noise import (
    U0,
    U1,
    LevyParams,
    NoiseSequence,
    cdf,
    density,
    generate_sequence,
    labels_from_waits,
    mix_seed,
    quantile,
    sample_waiting_steps,
)
from .qkr import (
    KickKernel,
    PhaseConvention,
    ResonanceParams,
    RotorState,
    RotorSystem,
    bessel_j_row,
    qkr_step,
    resonance_phase,
    rotor_moments,
)
from .qw import Chirality, CoinParams, WalkerState, WalkerSystem, coin_matrix, qw_step, walker_moments
