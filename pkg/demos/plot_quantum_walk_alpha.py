"""
Quantum walk exponent versus tail index
=======================================

Coins pi/3 and pi/6 alternated by Levy waiting times, walker started at the
origin with chirality (1, 0).  The fitted exponent drops from about 1 towards
1/2 as alpha grows.
"""

import math

import matplotlib.pyplot as plt

from levyqs import CoinParams, ExperimentConfig, LevyParams, fit_exponent, run_ensemble

alphas = [0.2, 0.6, 1.0, 1.4, 1.8, 2.0]
cs, errs = [], []
for alpha in alphas:
    cfg = ExperimentConfig("qw", CoinParams(math.pi / 3, math.pi / 6, "plus"),
                           LevyParams(alpha), n_steps=1500, n_trajectories=40, master_seed=3)
    fit = fit_exponent(run_ensemble(cfg))
    cs.append(fit.c)
    errs.append(fit.c_stderr)
    print(f"alpha={alpha}: c = {fit.c:.3f}")

fig, ax = plt.subplots()
ax.errorbar(alphas, cs, yerr=errs, fmt="o")
ax.axhline(1.0, ls="--", lw=0.8)
ax.axhline(0.5, ls="--", lw=0.8)
ax.set_xlabel("alpha")
ax.set_ylabel("c")
fig.savefig("quantum_walk_alpha.png", dpi=120)
