"""
Sub-ballistic spreading of the resonant kicked rotor
====================================================

Secondary resonance p/q = 1/3 with kick strengths +1 and -1 alternated by
Levy waiting times.  Small alpha stays close to ballistic growth, alpha = 2
is close to diffusive.  The ensemble is kept small so the script runs in a
couple of minutes on one core; raise ``N_TRAJ`` for smoother curves.
"""

import matplotlib.pyplot as plt
import numpy as np

from levyqs import ExperimentConfig, LevyParams, ResonanceParams, fit_exponent, run_ensemble

N_STEPS = 2000
N_TRAJ = 40

fig, ax = plt.subplots()
for alpha in (0.2, 1.0, 2.0):
    cfg = ExperimentConfig("qkr", ResonanceParams(1, 3, 1.0, -1.0), LevyParams(alpha),
                           N_STEPS, N_TRAJ, master_seed=1)
    series = run_ensemble(cfg)
    fit = fit_exponent(series)
    ax.loglog(series.times, series.sigma_mean, label=f"alpha={alpha}, c={fit.c:.3f}")
    print(f"alpha={alpha}: c = {fit.c:.3f} +/- {fit.c_stderr:.3f} (r2 {fit.r_squared:.4f})")

t = np.array([10, N_STEPS])
ax.loglog(t, t / 10.0, "k--", lw=0.8, label="slope 1")
ax.loglog(t, np.sqrt(t), "k:", lw=0.8, label="slope 1/2")
ax.set_xlabel("t / T")
ax.set_ylabel("sigma(t)")
ax.legend()
fig.savefig("kicked_rotor_sigma.png", dpi=120)
