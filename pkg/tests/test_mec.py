import math
from dataclasses import fields, replace

import numpy as np
import pytest
from hypothesis import given, settings
from scipy import integrate

from rotxfmr import mec
from rotxfmr.errors import LogDomainError, OutOfRangeError, ZeroReluctanceError
from rotxfmr.geometry import MU_0, MaterialSpec, WindingSpec, derived_dimensions

from .strategies import geometries, random_geometries

MU_FERRITE = 2000 * MU_0


# -- core reluctances -----------------------------------------------------

def test_stator_yoke_matches_arithmetic(small, ferrite):
    core = mec.core_reluctances(small, ferrite)
    expected = math.log(20 / 14.5) / (MU_FERRITE * 2 * math.pi * 1.5e-3)
    assert core.R_ys == pytest.approx(expected, rel=1e-13)
    assert core.R_ys == pytest.approx(1.358e4, rel=1e-3)


def test_stator_yoke_matches_quadrature_of_path_integral(small, ferrite):
    # integral of dl / (mu S) along a radial path with S = 2 pi r h_ys
    val, _ = integrate.quad(lambda r: 1 / (MU_FERRITE * 2 * math.pi * r * small.h_ys),
                            small.r_si + small.w_ts, small.r_so - small.w_ts,
                            epsabs=0, epsrel=1e-13)
    assert mec.core_reluctances(small, ferrite).R_ys == pytest.approx(val, rel=1e-10)


def test_teeth_use_annular_areas(small, ferrite):
    core = mec.core_reluctances(small, ferrite)
    area_inner = math.pi * (14.5e-3**2 - 13e-3**2)
    area_outer = math.pi * (21.5e-3**2 - 20e-3**2)
    assert core.R_ts1 == pytest.approx(3.5e-3 / (MU_FERRITE * area_inner), rel=1e-13)
    assert core.R_ts2 == pytest.approx(3.5e-3 / (MU_FERRITE * area_outer), rel=1e-13)


def test_outer_corner(small, ferrite):
    core = mec.core_reluctances(small, ferrite)
    expected = 1 / (4 * MU_FERRITE * (20e-3 * math.log(21.5 / 20) + 1.5e-3))
    assert core.R_cs2 == pytest.approx(expected, rel=1e-13)
    assert core.R_cr2 == core.R_cs2


def test_inner_corner_is_comparable_to_outer(small, ferrite):
    core = mec.core_reluctances(small, ferrite)
    assert 0.5 < core.R_cs1 / core.R_cs2 < 2


def test_ideal_core_limit(small, ferrite):
    base = mec.core_reluctances(small, ferrite)
    ideal = mec.core_reluctances(small, MaterialSpec(mu_r=1e9))
    for f in fields(base):
        assert getattr(ideal, f.name) < 1e-3 * getattr(base, f.name)


def test_doubling_yoke_height_halves_yoke_reluctance(small, ferrite):
    r1 = mec.core_reluctances(small, ferrite).R_ys
    r2 = mec.core_reluctances(replace(small, h_ys=2 * small.h_ys), ferrite).R_ys
    assert r2 == pytest.approx(r1 / 2, rel=1e-14)


def test_empty_yoke_span_raises(small):
    with pytest.raises(LogDomainError):
        mec.core_reluctances(replace(small, w_ts=5e-3))


# -- gap reluctances ------------------------------------------------------

def test_straight_gap_matches_arithmetic(small):
    gap = mec.gap_reluctances(small)
    expected = 0.0006 / (MU_0 * math.pi * (0.0145**2 - 0.013**2))
    assert gap.R_g1 == pytest.approx(expected, rel=1e-13)
    assert gap.R_g1 == pytest.approx(3.684e6, rel=1e-3)


def _explicit_fringe(r_edge, r_f, g):
    """Flat face in parallel with the shell tube, each built on its own."""
    L_x = 2 * math.pi * r_edge
    r_face = 1 / (0.26 * MU_0 * L_x)
    permeance, _ = integrate.quad(lambda r: MU_0 * L_x / (math.pi * r), g / 2, r_f - g / 2,
                                  epsabs=0, epsrel=1e-13)
    r_shell = 1 / permeance
    return 1 / (1 / r_face + 1 / r_shell)


@pytest.mark.parametrize("g", [0.4e-3, 0.6e-3, 1.2e-3, 2.5e-3, 4e-3])
def test_fringe_closed_form_equals_parallel_composition(small, g):
    geom = small.with_airgap(g)
    d = derived_dimensions(geom)
    gap = mec.gap_reluctances(geom)
    legs = {
        "R_go1": (geom.r_si, d.r_f_o), "R_gi1": (geom.r_si + geom.w_ts, d.r_f_i),
        "R_go2": (geom.r_so, d.r_f_o), "R_gi2": (geom.r_so - geom.w_ts, d.r_f_i),
    }
    for name, (r_edge, r_f) in legs.items():
        assert getattr(gap, name) == pytest.approx(_explicit_fringe(r_edge, r_f, g), rel=1e-12)


def test_fringe_helpers_compose_exactly():
    L_x = 2 * math.pi * 0.013
    composed = mec.parallel(mec.fringe_face_reluctance(L_x), mec.shell_reluctance(L_x, 5.6e-3, 6e-4))
    assert composed == pytest.approx(mec.combined_fringe_reluctance(0.013, 5.6e-3, 6e-4), rel=1e-14)


def test_equivalent_gap_below_each_branch(small):
    gap = mec.gap_reluctances(small)
    assert gap.R_geq1 <= min(gap.R_g1, gap.R_go1, gap.R_gi1)
    assert gap.R_geq2 <= min(gap.R_g2, gap.R_go2, gap.R_gi2)


def test_gap_reluctances_vanish_with_airgap(small):
    prev = None
    for g in [1e-3, 1e-4, 1e-6, 1e-9]:
        gap = mec.gap_reluctances(small.with_airgap(g))
        if prev is not None:
            assert gap.R_g1 < prev.R_g1 and gap.R_geq1 < prev.R_geq1 and gap.R_geq2 < prev.R_geq2
        prev = gap
    assert prev.R_g1 < 1e1 and prev.R_geq1 < 1e1


def test_fringe_log_domain():
    with pytest.raises(LogDomainError):
        mec.combined_fringe_reluctance(0.01, 1e-3, 2e-3)
    with pytest.raises(LogDomainError):
        mec.shell_reluctance(0.01, 1e-3, 0.0)


# -- main path ------------------------------------------------------------

def test_total_is_twelve_term_sum(small, ferrite):
    b = mec.reluctance_breakdown(small, ferrite)
    assert len(b.terms()) == 12
    assert b.R_m == pytest.approx(math.fsum(b.terms().values()), rel=1e-15)


def test_ideal_core_total_is_gap_only(small):
    gap = mec.gap_reluctances(small)
    zero = mec.CoreReluctances(*[0.0] * 10)
    assert mec.total_reluctance(zero, gap).R_m == gap.R_geq1 + gap.R_geq2


def test_airgap_dominates_main_path(small, ferrite):
    assert mec.reluctance_breakdown(small, ferrite).gap_share > 0.9


def test_magnetizing_inductance_turns_squared(small, ferrite):
    b = mec.reluctance_breakdown(small, ferrite)
    l1 = mec.magnetizing_inductance(b, WindingSpec(99, 99))
    l2 = mec.magnetizing_inductance(b, WindingSpec(198, 99))
    assert l2 == pytest.approx(4 * l1, rel=1e-15)
    assert l1 == 99**2 / b.R_m


def test_magnetizing_inductance_near_published_value(small, ferrite, w99):
    l_m = mec.mec_inductances(small, w99, ferrite).l_m
    assert abs(l_m - 2.631e-3) / 2.631e-3 < 0.10


def test_magnetizing_inductance_increases_with_permeability(small, w99):
    values = [mec.mec_inductances(small, w99, MaterialSpec(mu_r=mu)).l_m
              for mu in (1, 10, 100, 1000, 2000, 1e4, 1e6)]
    assert np.all(np.diff(values) > 0)


def test_zero_reluctance_rejected(w99):
    with pytest.raises(ZeroReluctanceError):
        mec.magnetizing_inductance(0.0, w99)


# -- leakage --------------------------------------------------------------

def test_leakage_field_profile(small, w99):
    z_gap = small.h_yr + small.h_wr + small.g / 2
    f = mec.leakage_field(small, w99, 2.0, z_gap)
    assert f.region == "II"
    assert f.psi == 99 * 2.0
    assert f.path_len == pytest.approx(small.w_ws + math.pi * small.g / 2)

    assert mec.leakage_field(small, w99, 2.0, small.h_yr).psi == 0
    mid = mec.leakage_field(small, w99, 2.0, small.h_yr + small.h_wr / 2)
    assert mid.region == "I" and mid.psi == pytest.approx(99.0) and mid.path_len == small.w_ws
    top = small.h_yr + small.h_wr + small.g + small.h_ws
    end = mec.leakage_field(small, w99, 2.0, top)
    assert end.region == "III" and end.psi == pytest.approx(0, abs=1e-9)


def test_leakage_field_out_of_range(small, w99):
    with pytest.raises(OutOfRangeError):
        mec.leakage_field(small, w99, 1.0, 0.0)


def test_mmf_continuous_and_peaks_in_gap(small, w99):
    z0 = small.h_yr
    z3 = z0 + small.h_wr + small.g + small.h_ws
    z = np.linspace(z0, z3, 20001)
    psi, _ = mec.mmf_profile(small, w99, 1.0, z)
    assert np.max(np.abs(np.diff(psi))) < 99 * 1.0 * 2 * (z[1] - z[0]) / small.h_ws
    assert psi.max() == pytest.approx(99.0)
    in_gap = (z >= z0 + small.h_wr) & (z < z0 + small.h_wr + small.g)
    assert np.all(psi[in_gap] == 99.0)


def test_leakage_closed_form_arithmetic(small, w99):
    by_hand = MU_0 * math.pi * 99**2 * 0.0345 * (2 * 3.5 / (3 * 5.5) + 0.6 / (5.5 + 0.3 * math.pi))
    l_l = mec.leakage_inductance(small, w99)
    assert l_l == pytest.approx(by_hand, rel=1e-12)
    assert l_l == pytest.approx(0.6915e-3, rel=2e-3)


def test_leakage_zero_gap_limit(small, w99):
    windows_only = MU_0 * math.pi * 99**2 * 0.0345 * (7.0 / 16.5)
    assert mec.leakage_inductance(small.with_airgap(1e-12), w99) == pytest.approx(windows_only, rel=1e-9)


def test_leakage_increases_with_airgap(small, w99):
    values = [mec.leakage_inductance(small.with_airgap(g), w99) for g in np.linspace(1e-5, 5e-3, 50)]
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("geom_name", ["small", "large"])
def test_quadrature_matches_closed_form(request, geom_name, w99):
    geom = request.getfixturevalue(geom_name)
    numeric = mec.leakage_inductance_numeric(geom, w99, 10_000)
    assert numeric == pytest.approx(mec.leakage_inductance(geom, w99), rel=1e-3)


def test_quadrature_converges_at_second_order(small, w99):
    exact = mec.leakage_inductance(small, w99)
    ns = [100, 200, 400, 800, 1600]
    errs = [abs(mec.leakage_inductance_numeric(small, w99, n) - exact) for n in ns]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 1.9)


def test_quadrature_gap_region_alone(small, w99):
    gap_term = MU_0 * math.pi * 99**2 * (small.r_si + small.r_so) * small.g / (
        small.w_ws + math.pi * small.g / 2)
    got = mec.leakage_inductance_numeric(small, w99, 10_000, regions=("II",))
    assert got == pytest.approx(gap_term, rel=1e-12)


def test_quadrature_independent_of_current(small, w99):
    a = mec.leakage_inductance_numeric(small, w99, 1000, I_s=1.0)
    b = mec.leakage_inductance_numeric(small, w99, 1000, I_s=37.5)
    assert a == pytest.approx(b, rel=1e-13)


def test_quadrature_needs_enough_points(small, w99):
    with pytest.raises(ValueError):
        mec.leakage_inductance_numeric(small, w99, 50)


@pytest.mark.parametrize("geom", random_geometries(20))
def test_quadrature_random_geometries(geom, w99):
    assert mec.leakage_inductance_numeric(geom, w99) == pytest.approx(
        mec.leakage_inductance(geom, w99), rel=1e-3)


# -- properties -----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(geometries)
def test_reluctances_nonnegative(geom):
    b = mec.reluctance_breakdown(geom)
    assert all(v >= 0 for v in b.terms().values())
    assert b.R_m > 0


@settings(max_examples=40, deadline=None)
@given(geometries)
def test_both_inductances_scale_with_turns_squared(geom):
    a = mec.mec_inductances(geom, WindingSpec(7, 7))
    b = mec.mec_inductances(geom, WindingSpec(21, 7))
    assert b.l_m == pytest.approx(9 * a.l_m, rel=1e-13)
    assert b.l_l == pytest.approx(9 * a.l_l, rel=1e-13)


def test_airgap_monotonicity_small(small, w99, ferrite):
    res = [mec.mec_inductances(small.with_airgap(g), w99, ferrite)
           for g in np.linspace(0.4e-3, 4e-3, 37)]
    assert np.all(np.diff([r.l_m for r in res]) < 0)
    assert np.all(np.diff([r.l_l for r in res]) > 0)
