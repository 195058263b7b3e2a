"""
Exact symmetries of the resonant map
====================================

Three checks that hold to rounding error and need no ensemble:

* at a primary resonance the two kick operators commute;
* at the antiresonance p/q = 1/2 the state revives every two kicks;
* p/q and (q - p)/q give identical momentum distributions.
"""

import numpy as np

from levyqs import LevyParams, ResonanceParams, RotorState, RotorSystem, generate_sequence, qkr_step
from levyqs import bessel_j_row, rotor_moments

###############################################################################
# Primary resonance: U(k1) U(k2) psi == U(k2) U(k1) psi for a random psi.
params = ResonanceParams(1, 1, 1.0, -0.7)
k1, k2 = bessel_j_row(1.0), bessel_j_row(-0.7)
rng = np.random.default_rng(0)
a = rng.normal(size=401) + 1j * rng.normal(size=401)
psi = RotorState(a / np.linalg.norm(a), 200)
ab = qkr_step(qkr_step(psi, k2, params), k1, params)
ba = qkr_step(qkr_step(psi, k1, params), k2, params)
half = max(ab.offset, ba.offset)
diff = np.pad(ab.amplitudes, half - ab.offset) - np.pad(ba.amplitudes, half - ba.offset)
print("commutator norm:", np.linalg.norm(diff))

###############################################################################
# Antiresonance: sigma vanishes after every even number of kicks.
system = RotorSystem(ResonanceParams(1, 2, 1.0, 1.0))
s = system.initial_state()
for t in range(1, 7):
    s = system.step(s, 0)
    print(f"t={t}: sigma = {np.sqrt(rotor_moments(s)[0]):.3e}")

###############################################################################
# Conjugate resonances share |a_l|^2 for the same noise realisation.
labels = generate_sequence(5, LevyParams(1.0), 400).labels
record = np.zeros(400, bool)
probs = [RotorSystem(ResonanceParams(p, 3, 1.0, -1.0)).run(labels, record)[1].probabilities()
         for p in (1, 2)]
print("max |P_1/3 - P_2/3|:", np.max(np.abs(probs[0] - probs[1])))
