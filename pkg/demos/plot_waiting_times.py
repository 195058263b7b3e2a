"""
Levy waiting times and operator sequences
=========================================

Draw waiting times from the truncated power law, compare the histogram
with the density, and look at the U0/U1 label sequences they produce for a
few tail indices.
"""

import matplotlib.pyplot as plt
import numpy as np

from levyqs import LevyParams, density, generate_sequence, quantile
from levyqs.levy_noise import make_rng

rng = make_rng(7)

###############################################################################
# Sample one million waiting times for alpha = 1 by inverting the CDF.
params = LevyParams(1.0)
xi = quantile(rng.random(10**6), params)

bins = np.logspace(-2, 4, 60)
hist, edges = np.histogram(xi, bins=bins, density=True)
centers = np.sqrt(edges[1:] * edges[:-1])

fig, ax = plt.subplots()
ax.loglog(centers, hist, "o", ms=3, label="sampled")
ax.loglog(centers, [density(t, params) for t in centers], label="density")
ax.set_xlabel("waiting time / T")
ax.set_ylabel("probability density")
ax.legend()
fig.savefig("waiting_times.png", dpi=120)

###############################################################################
# Smaller alpha means longer runs of U0 between single U1 steps.
for alpha in (0.2, 1.0, 2.0):
    seq = generate_sequence(seed=1, params=LevyParams(alpha), n_steps=60)
    print(f"alpha={alpha:>3}: {seq.to_text()}  U1 fraction "
          f"{generate_sequence(1, LevyParams(alpha), 10**5).labels.mean():.3f}")
