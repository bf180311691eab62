"""Three ways to draw the same two-winding transformer.

Start from a measured inductance matrix, convert it to the split-leakage
and integrated-leakage circuits, and check that all three predict the same
rotor voltage at every frequency.
"""

# %%
import numpy as np

from rotxfmr import circuits
from rotxfmr.circuits import CouplingParams, LoadImpedance

# inductance matrix of the small-size design (henry)
model_i = CouplingParams(l_ss=3.322e-3, l_rr=3.348e-3, m=2.968e-3)
print(f"coupling coefficient k = {circuits.coupling_coefficient(model_i):.4f}")

# %% Convert to the two T-circuits
model_ii = circuits.to_model_ii(model_i)
model_iii = circuits.to_model_iii(model_i)
print(model_ii)
print(model_iii)
print(f"leakage lumped on the stator side: {model_iii.l_l * 1e3:.4f} mH")

# %% Frequency response with a 10 ohm load
load = LoadImpedance.resistive(10.0)
f = circuits.log_grid(10.0, 1e6, 200)
h1 = circuits.transfer_model_i(model_i, load, f)
h2 = circuits.transfer_model_ii(model_ii, load, f)
h3 = circuits.transfer_model_iii(model_iii, load, f)
print("largest relative difference, II vs I :", np.max(np.abs(h2 / h1 - 1)))
print("largest relative difference, III vs I:", np.max(np.abs(h3 / h1 - 1)))

# %% A few samples of the Bode curve
resp = circuits.bode_sample(model_i, load, f[::40], label="model I")
for fr, mag, ph in zip(resp.freqs, resp.magnitude_db, resp.phase_deg):
    print(f"{fr:>12.1f} Hz  {mag:8.3f} dB  {ph:8.2f} deg")
