"""Sweep the airgap and compare against reference data."""

# %%
from rotxfmr import analysis, tables
from rotxfmr.analysis import SweepSpec
from rotxfmr.data import data_path
from rotxfmr.geometry import WindingSpec, small_design

spec = SweepSpec(g_min=0.4e-3, g_max=4e-3, n_points=19, geometry=small_design(),
                 winding=WindingSpec(99, 99))
result = analysis.airgap_sweep(spec)
print("   g [mm]   l_m [mH]   l_l [mH]   n_adj   gap share")
for r in result.valid_rows:
    print(f"{r.g * 1e3:9.2f} {r.l_m * 1e3:10.4f} {r.l_l * 1e3:10.4f} {r.n_adjusted:7.4f} {r.gap_share:10.4f}")

# %% Against the published FEA point
refs = tables.read_reference_csv(data_path("ref_small_size.csv"))
for qty in ("l_m", "l_l"):
    rep = analysis.compare_reference(analysis.sweep_dataset(result, qty, "H"), refs[qty])
    print(f"{qty}: relative error {rep.max_error:.2%} ({'ok' if rep.passed else 'over 10%'})")

# %% Past the window half-width the inner fringe tube collapses and points are skipped
wide = analysis.airgap_sweep(SweepSpec(1e-3, 7e-3, 7, small_design(), WindingSpec(99, 99)))
for r in wide.skipped_rows:
    print(f"skipped g = {r.g * 1e3:.1f} mm: {r.skipped.splitlines()[0]}")
