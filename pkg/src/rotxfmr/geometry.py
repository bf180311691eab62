"""Axial-flux rotary transformer geometry.

The transformer is two back-to-back ferrite rings (stator and rotor), each
with an annular winding window bounded by an inner and an outer tooth.
Axially the stack reads, from the rotor side::

    rotor yoke | rotor window | airgap | stator window | stator yoke
      h_yr         h_wr           g         h_ws           h_ys

All lengths are SI metres.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields, replace

from .errors import GeometryError, GeometryWarning

MU_0 = 4e-7 * math.pi

# relative tolerance on the radial tiling r_o - r_i == 2 w_t + w_w
TILING_RTOL = 1e-9
# below r_f = FRINGE_MIN_RATIO * g the face + shell fringe permeance turns negative
FRINGE_MIN_RATIO = 0.5 * (1 + math.exp(-0.26 * math.pi))


@dataclass(frozen=True)
class TransformerGeometry:
    h_ws: float  # stator window height
    h_wr: float  # rotor window height
    w_ws: float  # stator window width
    w_wr: float  # rotor window width
    r_si: float  # stator inner radius
    r_ri: float  # rotor inner radius
    r_so: float  # stator outer radius
    r_ro: float  # rotor outer radius
    g: float  # airgap
    w_ts: float  # stator tooth width
    w_tr: float  # rotor tooth width
    h_ys: float  # stator yoke height
    h_yr: float  # rotor yoke height

    @classmethod
    def from_mm(cls, **dims):
        return cls(**{k: v * 1e-3 for k, v in dims.items()})

    @classmethod
    def symmetric(cls, h_w, w_w, r_i, r_o, g, w_t, h_y):
        """Geometry with identical stator and rotor dimensions (metres)."""
        return cls(h_ws=h_w, h_wr=h_w, w_ws=w_w, w_wr=w_w, r_si=r_i, r_ri=r_i,
                   r_so=r_o, r_ro=r_o, g=g, w_ts=w_t, w_tr=w_t, h_ys=h_y, h_yr=h_y)

    def with_airgap(self, g):
        return replace(self, g=g)

    def scaled(self, alpha):
        return TransformerGeometry(**{f.name: getattr(self, f.name) * alpha for f in fields(self)})

    def swapped(self):
        """Exchange the stator and rotor dimensions."""
        return TransformerGeometry(
            h_ws=self.h_wr, h_wr=self.h_ws, w_ws=self.w_wr, w_wr=self.w_ws,
            r_si=self.r_ri, r_ri=self.r_si, r_so=self.r_ro, r_ro=self.r_so,
            g=self.g, w_ts=self.w_tr, w_tr=self.w_ts, h_ys=self.h_yr, h_yr=self.h_ys,
        )

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class DerivedDimensions:
    h: float  # total axial stack height
    r_f_o: float  # outer (open-air side) fringe radius
    r_f_i: float  # inner (window side) fringe radius


@dataclass(frozen=True)
class MaterialSpec:
    mu_r: float = 2000.0
    mu_0: float = MU_0

    def __post_init__(self):
        if not self.mu_r >= 1:
            raise ValueError(f"mu_r must be >= 1, got {self.mu_r}")

    @property
    def mu(self):
        return self.mu_r * self.mu_0


@dataclass(frozen=True)
class WindingSpec:
    N_s: int
    N_r: int
    r_s: float = 0.0
    r_r: float = 0.0

    def __post_init__(self):
        for name in ("N_s", "N_r"):
            val = getattr(self, name)
            if isinstance(val, bool) or int(val) != val or val < 1:
                raise ValueError(f"{name} must be a positive integer, got {val!r}")
        for name in ("r_s", "r_r"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def turn_ratio(self):
        return self.N_s / self.N_r


def small_design():
    """Axial small-size design (the prototyped one)."""
    return TransformerGeometry.from_mm(
        h_ws=3.5, h_wr=3.5, w_ws=5.5, w_wr=5.5, r_si=13, r_ri=13, r_so=21.5,
        r_ro=21.5, g=0.6, w_ts=1.5, w_tr=1.5, h_ys=1.5, h_yr=1.5,
    )


def large_design():
    return TransformerGeometry.from_mm(
        h_ws=7.8, h_wr=7.8, w_ws=35.6, w_wr=35.6, r_si=17, r_ri=17, r_so=67.6,
        r_ro=67.6, g=0.6, w_ts=7.5, w_tr=7.5, h_ys=7.5, h_yr=7.5,
    )


def _stack_and_fringe(geom):
    h = geom.h_yr + geom.h_wr + geom.g + geom.h_ws + geom.h_ys
    r_f_o = h - (geom.h_wr + geom.h_yr)
    r_f_i = min(h - (geom.h_wr + geom.h_yr) - geom.h_ys, geom.w_ws / 2)
    return h, r_f_o, r_f_i


def _fringe_violations(geom, r_f_o, r_f_i):
    out = []
    half_gap = geom.g / 2
    if not half_gap > 0:
        out.append(("FringeRadiusDegenerate",
                    f"airgap g={geom.g!r} leaves the fringe logarithms undefined"))
        return out
    for name, r_f in (("r_f_o", r_f_o), ("r_f_i", r_f_i)):
        if not r_f > half_gap:
            out.append(("FringeRadiusDegenerate",
                        f"{name}={r_f!r} must exceed g/2={half_gap!r}"))
    return out


def geometry_violations(geom):
    """Return every violated invariant of ``geom`` as ``(name, message)`` pairs."""
    out = []
    for f in fields(geom):
        val = getattr(geom, f.name)
        if not (math.isfinite(val) and val > 0):
            out.append(("NonPositiveDimension", f"{f.name}={val!r} must be > 0"))

    sides = (
        ("stator", geom.r_si, geom.r_so, geom.w_ts, geom.w_ws),
        ("rotor", geom.r_ri, geom.r_ro, geom.w_tr, geom.w_wr),
    )
    for side, r_i, r_o, w_t, w_w in sides:
        if not r_o > r_i + 2 * w_t:
            out.append(("RadialTilingMismatch",
                        f"{side}: outer radius {r_o!r} leaves no window beyond "
                        f"inner radius + two teeth ({r_i + 2 * w_t!r})"))
            continue
        span = r_o - r_i
        tiled = 2 * w_t + w_w
        if not math.isclose(span, tiled, rel_tol=TILING_RTOL):
            out.append(("RadialTilingMismatch",
                        f"{side}: r_o - r_i = {span!r} but 2*w_t + w_w = {tiled!r}"))

    _, r_f_o, r_f_i = _stack_and_fringe(geom)
    out.extend(_fringe_violations(geom, r_f_o, r_f_i))
    return out


def validate_geometry(geom, warn=True):
    """Return ``geom`` unchanged if valid, else raise :class:`GeometryError`.

    The error lists every violated invariant, not just the first one. An airgap
    that is not smaller than both window heights only triggers a warning.
    """
    violations = geometry_violations(geom)
    if violations:
        raise GeometryError(violations)
    if warn and not (geom.g < geom.h_ws and geom.g < geom.h_wr):
        warnings.warn(
            f"airgap {geom.g!r} m is not small relative to the window heights",
            GeometryWarning, stacklevel=2,
        )
    if warn:
        _, _, r_f_i = _stack_and_fringe(geom)
        if r_f_i < FRINGE_MIN_RATIO * geom.g:
            warnings.warn(
                f"window fringe radius {r_f_i!r} m is below {FRINGE_MIN_RATIO:.3f}*g; "
                "the window fringe reluctance is negative at this airgap",
                GeometryWarning, stacklevel=2,
            )
    return geom


def derived_dimensions(geom):
    """Stack height and fringe radii of the airgap fringe flux tubes.

    The outer fringe radius spans from the airgap face to the far side of the
    stator yoke; the inner one is capped at half the window width so the two
    window-side fringes never overlap.
    """
    h, r_f_o, r_f_i = _stack_and_fringe(geom)
    violations = _fringe_violations(geom, r_f_o, r_f_i)
    if violations:
        raise GeometryError(violations)
    return DerivedDimensions(h=h, r_f_o=r_f_o, r_f_i=r_f_i)
