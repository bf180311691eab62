"""What happens if the transformer ratio is taken from the turn count.

With equal turns the naive ratio is 1, but the integrated-leakage circuit
needs n = m / l_rr. Using the wrong one shifts the whole flat band.
"""

# %%
import math

from rotxfmr import circuits
from rotxfmr.circuits import CouplingParams, LoadImpedance

designs = {
    "small-size": CouplingParams(l_ss=3.322e-3, l_rr=3.348e-3, m=2.968e-3),
    "large-size": CouplingParams(l_ss=4.693, l_rr=4.695, m=4.625),
}
load = LoadImpedance.resistive(10.0)
# the large design only flattens out below ~12 Hz, so start the grid very low
grid = circuits.log_grid(1e-3, 1e6, 400)

# %%
for name, p in designs.items():
    exact = circuits.to_model_iii(p)
    naive = exact.with_ratio(1.0)
    gap = circuits.flat_band_gap_db(circuits.bode_sample(exact, load, grid),
                                    circuits.bode_sample(naive, load, grid))
    print(f"{name}: n = {exact.n:.4f}, flat-band gap {gap:.3f} dB "
          f"(20 log10(1/n) = {20 * math.log10(1 / exact.n):.3f} dB)")

# %% The adjusted ratio needs only l_m, l_l and the turn ratio
for turns in (0.5, 1.0, 2.0):
    print(f"N_s/N_r = {turns}: adjusted n = {circuits.adjusted_ratio(2.631e-3, 0.6915e-3, turns):.4f}")
