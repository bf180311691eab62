"""Inductances from geometry alone, via the magnetic equivalent circuit.

The turn count is not listed with the design, so it is first recovered
from the published leakage inductance, then used for both inductances.
"""

# %%
from rotxfmr import analysis, mec
from rotxfmr.geometry import MaterialSpec, WindingSpec, derived_dimensions, small_design

geom = small_design()
d = derived_dimensions(geom)
print(f"stack height {d.h * 1e3:.2f} mm, fringe radii {d.r_f_o * 1e3:.2f} / {d.r_f_i * 1e3:.2f} mm")

# %% Turn count from the leakage
estimate, turns = analysis.backsolve_turns(geom, 0.6915e-3)
print(f"N_s estimate {estimate:.3f} -> {turns} turns")
w = WindingSpec(turns, turns)

# %% Where the reluctance sits
b = mec.reluctance_breakdown(geom, MaterialSpec(mu_r=2000))
for name, value in b.terms().items():
    print(f"  {name:<7} {value:12.4e} 1/H")
print(f"airgap share of R_m: {b.gap_share:.1%}")

# %% Inductances, and the leakage once more by brute-force integration
res = mec.mec_inductances(geom, w)
numeric = mec.leakage_inductance_numeric(geom, w)
print(f"l_m = {res.l_m * 1e3:.4f} mH (published FEA: 2.631 mH)")
print(f"l_l = {res.l_l * 1e3:.4f} mH closed form, {numeric * 1e3:.4f} mH by quadrature")
