"""Magnetic equivalent circuit of the axial rotary transformer.

Main flux path, per leg (leg 1 = inner teeth, leg 2 = outer teeth)::

    stator yoke -> stator tooth -> corner -> airgap -> corner -> rotor tooth -> rotor yoke

The airgap of each leg is the straight gap reluctance in parallel with two
fringe paths: one towards open air, one towards the winding window. Each
fringe path is itself a flat fringe face in parallel with a half-annular
shell tube.

Leakage is computed from the stored magnetic energy in the winding windows
and the airgap, with the MMF profile rising linearly across the rotor window,
flat over the gap and falling linearly across the stator window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import LogDomainError, OutOfRangeError, ZeroReluctanceError
from .geometry import MU_0, MaterialSpec, derived_dimensions

# Fringe-face permeance coefficient for a flat pole edge.
FRINGE_COEFFICIENT = 0.26


@dataclass(frozen=True)
class CoreReluctances:
    R_ys: float
    R_yr: float
    R_ts1: float
    R_ts2: float
    R_tr1: float
    R_tr2: float
    R_cs1: float
    R_cs2: float
    R_cr1: float
    R_cr2: float

    def total(self):
        return sum(getattr(self, f.name) for f in fields(self))


@dataclass(frozen=True)
class GapReluctances:
    R_g1: float
    R_g2: float
    R_go1: float
    R_gi1: float
    R_go2: float
    R_gi2: float
    R_geq1: float
    R_geq2: float


@dataclass(frozen=True)
class ReluctanceBreakdown:
    core: CoreReluctances
    gap: GapReluctances
    R_m: float

    @property
    def gap_share(self):
        """Fraction of the main-path reluctance sitting in the airgap."""
        return (self.gap.R_geq1 + self.gap.R_geq2) / self.R_m

    def terms(self):
        """The twelve series terms of the main path, by name."""
        c, g = self.core, self.gap
        return {
            "R_ys": c.R_ys, "R_yr": c.R_yr,
            "R_ts1": c.R_ts1, "R_tr1": c.R_tr1, "R_cs1": c.R_cs1, "R_cr1": c.R_cr1,
            "R_geq1": g.R_geq1,
            "R_ts2": c.R_ts2, "R_tr2": c.R_tr2, "R_geq2": g.R_geq2,
            "R_cs2": c.R_cs2, "R_cr2": c.R_cr2,
        }


@dataclass(frozen=True)
class LeakageField:
    psi: float  # MMF at z [A turns]
    path_len: float  # flux-line length at z [m]
    region: str  # "I", "II" or "III"


def parallel(*rs):
    """Parallel combination of reluctances."""
    return 1.0 / sum(1.0 / r for r in rs)


def _yoke(r_i, r_o, w_t, h_y, mu):
    lo, hi = r_i + w_t, r_o - w_t
    if not hi > lo:
        raise LogDomainError(f"yoke span is empty: r_o - w_t = {hi!r} <= r_i + w_t = {lo!r}")
    return math.log(hi / lo) / (mu * 2 * math.pi * h_y)


def _annulus(r_a, r_b):
    return math.pi * (r_b**2 - r_a**2)


def _outer_corner(r_o, w_t, mu):
    return 1.0 / (4 * mu * ((r_o - w_t) * math.log(r_o / (r_o - w_t)) + w_t))


def _inner_corner(r_i, w_t, mu):
    # outer-corner form mirrored about the tooth (r_o -> r_i, w_t -> -w_t)
    return 1.0 / (4 * mu * ((r_i + w_t) * math.log((r_i + w_t) / r_i) + w_t))


def core_reluctances(geom, material=None):
    """Yoke, tooth and corner reluctances of both cores."""
    mu = (material or MaterialSpec()).mu
    return CoreReluctances(
        R_ys=_yoke(geom.r_si, geom.r_so, geom.w_ts, geom.h_ys, mu),
        R_yr=_yoke(geom.r_ri, geom.r_ro, geom.w_tr, geom.h_yr, mu),
        R_ts1=geom.h_ws / (mu * _annulus(geom.r_si, geom.r_si + geom.w_ts)),
        R_ts2=geom.h_ws / (mu * _annulus(geom.r_so - geom.w_ts, geom.r_so)),
        R_tr1=geom.h_wr / (mu * _annulus(geom.r_ri, geom.r_ri + geom.w_tr)),
        R_tr2=geom.h_wr / (mu * _annulus(geom.r_ro - geom.w_tr, geom.r_ro)),
        R_cs1=_inner_corner(geom.r_si, geom.w_ts, mu),
        R_cs2=_outer_corner(geom.r_so, geom.w_ts, mu),
        R_cr1=_inner_corner(geom.r_ri, geom.w_tr, mu),
        R_cr2=_outer_corner(geom.r_ro, geom.w_tr, mu),
    )


def _fringe_log(r_f, g):
    half = g / 2
    if not (half > 0 and r_f > half):
        raise LogDomainError(f"fringe radius {r_f!r} must exceed g/2 = {half!r} > 0")
    return math.log((r_f - half) / half)


def fringe_face_reluctance(L_x):
    """Flat fringe face along an edge of length ``L_x``."""
    return 1.0 / (FRINGE_COEFFICIENT * MU_0 * L_x)


def shell_reluctance(L_x, r_f, g):
    """Half-annular flux tube from radius g/2 out to r_f - g/2 along an edge of length ``L_x``.

    The permeance is the integral of mu_0 L_x / (pi r) dr over that radius span.
    """
    return math.pi / (MU_0 * L_x * _fringe_log(r_f, g))


def combined_fringe_reluctance(r_edge, r_f, g):
    """Fringe face and shell tube in parallel for a circular edge of radius ``r_edge``.

    The result turns negative once ``r_f`` drops below about ``0.72*g``; the
    value is still returned (it only trims the leg permeance) and
    :func:`rotxfmr.geometry.validate_geometry` warns about it.
    """
    return 1.0 / (2 * MU_0 * r_edge * (FRINGE_COEFFICIENT * math.pi + _fringe_log(r_f, g)))


def gap_reluctances(geom, derived=None):
    d = derived or derived_dimensions(geom)
    g = geom.g
    R_g1 = g / (MU_0 * _annulus(geom.r_ri, geom.r_ri + geom.w_tr))
    R_g2 = g / (MU_0 * _annulus(geom.r_ro - geom.w_tr, geom.r_ro))
    R_go1 = combined_fringe_reluctance(geom.r_si, d.r_f_o, g)
    R_gi1 = combined_fringe_reluctance(geom.r_si + geom.w_ts, d.r_f_i, g)
    R_go2 = combined_fringe_reluctance(geom.r_so, d.r_f_o, g)
    R_gi2 = combined_fringe_reluctance(geom.r_so - geom.w_ts, d.r_f_i, g)
    return GapReluctances(
        R_g1=R_g1, R_g2=R_g2, R_go1=R_go1, R_gi1=R_gi1, R_go2=R_go2, R_gi2=R_gi2,
        R_geq1=parallel(R_gi1, R_g1, R_go1),
        R_geq2=parallel(R_gi2, R_g2, R_go2),
    )


def total_reluctance(core, gap):
    c, g = core, gap
    R_m = (c.R_ys + c.R_yr + c.R_ts1 + c.R_tr1 + c.R_cs1 + c.R_cr1 + g.R_geq1
           + c.R_ts2 + c.R_tr2 + g.R_geq2 + c.R_cs2 + c.R_cr2)
    return ReluctanceBreakdown(core=core, gap=gap, R_m=R_m)


def reluctance_breakdown(geom, material=None):
    return total_reluctance(core_reluctances(geom, material), gap_reluctances(geom))


def magnetizing_inductance(breakdown, winding):
    """Magnetizing inductance seen from the stator, N_s**2 / R_m."""
    R_m = breakdown.R_m if isinstance(breakdown, ReluctanceBreakdown) else breakdown
    if not R_m > 0:
        raise ZeroReluctanceError(f"main-path reluctance must be positive, got {R_m!r}")
    return winding.N_s**2 / R_m


def _stack_bounds(geom):
    z0 = geom.h_yr
    z1 = z0 + geom.h_wr
    z2 = z1 + geom.g
    z3 = z2 + geom.h_ws
    return z0, z1, z2, z3


def mmf_profile(geom, winding, I_s, z):
    """Vectorised MMF and flux-line length over axial positions ``z``.

    Returns ``(psi, path_len)`` arrays shaped like ``z``.
    """
    z = np.asarray(z, dtype=float)
    z0, z1, z2, z3 = _stack_bounds(geom)
    ni = winding.N_s * I_s
    psi = np.select(
        [z < z1, z < z2],
        [ni * (z - z0) / geom.h_wr, np.full_like(z, ni)],
        ni * (z3 - z) / geom.h_ws,
    )
    gap_len = geom.w_ws + math.pi * geom.g / 2
    path_len = np.where((z >= z1) & (z < z2), gap_len, geom.w_ws)
    return psi, path_len


def leakage_field(geom, winding, I_s, z):
    z0, z1, z2, z3 = _stack_bounds(geom)
    if not z0 <= z <= z3:
        raise OutOfRangeError(f"z={z!r} outside the winding stack [{z0!r}, {z3!r}]")
    region = "I" if z < z1 else "II" if z < z2 else "III"
    psi, path_len = mmf_profile(geom, winding, I_s, z)
    return LeakageField(psi=float(psi), path_len=float(path_len), region=region)


def leakage_coefficient(geom):
    """Leakage inductance per turn squared, referred to the stator [H]."""
    w = geom.w_ws
    return MU_0 * math.pi * (geom.r_si + geom.r_so) * (
        geom.h_wr / (3 * w) + geom.h_ws / (3 * w) + geom.g / (w + math.pi * geom.g / 2)
    )


def leakage_inductance(geom, winding):
    """Closed-form leakage inductance, all of it on the stator side."""
    return winding.N_s**2 * leakage_coefficient(geom)


def leakage_inductance_numeric(geom, winding, n_quadrature=10_000, I_s=1.0,
                               regions=("I", "II", "III")):
    """Leakage inductance by integrating the stored field energy.

    The field in the window is H = psi(z) / l(z), stored in a thin shell of
    mean circumference pi (r_si + r_so), axial thickness dz and flux-line
    length l(z). Energy 1/2 mu_0 H**2 dv is integrated with a composite
    midpoint rule on each region separately (the path length jumps at the
    region boundaries) and equated to 1/2 l_l I_s**2.

    ``regions`` restricts the integral to a subset, for isolating terms.
    """
    if n_quadrature < 100:
        raise ValueError(f"n_quadrature must be >= 100, got {n_quadrature}")
    z0, z1, z2, z3 = _stack_bounds(geom)
    spans = {"I": (z0, z1), "II": (z1, z2), "III": (z2, z3)}
    total = z3 - z0
    circumference = math.pi * (geom.r_si + geom.r_so)

    energy = 0.0
    for name in regions:
        a, b = spans[name]
        n = max(1, round(n_quadrature * (b - a) / total))
        dz = (b - a) / n
        z = a + (np.arange(n) + 0.5) * dz
        psi, path_len = mmf_profile(geom, winding, I_s, z)
        H = psi / path_len
        dv = circumference * path_len * dz
        energy += np.sum(0.5 * MU_0 * H**2 * dv)
    return 2 * energy / I_s**2


@dataclass(frozen=True)
class MecResult:
    breakdown: ReluctanceBreakdown
    l_m: float
    l_l: float


def mec_inductances(geom, winding, material=None):
    """Magnetizing and leakage inductance of ``geom`` in one call."""
    breakdown = reluctance_breakdown(geom, material)
    return MecResult(
        breakdown=breakdown,
        l_m=magnetizing_inductance(breakdown, winding),
        l_l=leakage_inductance(geom, winding),
    )
