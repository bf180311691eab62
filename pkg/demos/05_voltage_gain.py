"""Rotor voltage of the small-size prototype, open and loaded.

The loaded prediction lands well above the published numbers. Adding
winding resistance pulls it down only slowly: even 10 ohm per winding
leaves it near 1.6 V.
"""

# %%
from rotxfmr import analysis, tables
from rotxfmr.analysis import GainStudy
from rotxfmr.circuits import LoadImpedance
from rotxfmr.data import data_path
from rotxfmr.geometry import WindingSpec, small_design

geom, w = small_design(), WindingSpec(99, 99)
ref = tables.read_reference_csv(data_path("ref_voltage_gain.csv"))
loads = {"noload": LoadImpedance.open_circuit(), "loaded": LoadImpedance.series_rl(19.0, 2.289e-3)}

# %%
for key, load in loads.items():
    for g, published, measured in zip(ref[f"v_{key}_method"].x, ref[f"v_{key}_method"].values,
                                      ref[f"v_{key}_meas"].values):
        v = analysis.predict_gain(GainStudy(2.5, 4000.0, load, g), geom, w).v_rotor
        print(f"{key:<7} g = {g * 1e3:.1f} mm: {v:.3f} V  (published {published:.2f} V, "
              f"measured {measured:.2f} V)")

# %% Sensitivity to winding resistance, loaded, 0.6 mm
study = GainStudy(2.5, 4000.0, loads["loaded"], 0.6e-3)
for r, res in analysis.resistance_sensitivity(study, geom, w, resistances=(0, 2, 5, 10)):
    print(f"r_s = r_r = {r:>4} ohm: {res.v_rotor:.3f} V")
