"""Electrical circuit models of a two-winding transformer and their transfer functions.

Three equivalent circuits describe the same two-port:

* Model I   -- self and mutual inductances (``CouplingParams``)
* Model II  -- leakage split between both sides, magnetizing branch on the
  primary, ideal transformer of ratio ``n1`` (``SplitLeakageParams``)
* Model III -- all leakage lumped on the stator side, ideal transformer of
  the exact ratio ``n`` (``IntegratedLeakageParams``)

Transfer functions give v_r / v_s for a load ``z_l`` across the rotor
winding, with s = j 2 pi f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeLeakageError, SingularAtDCError

# relative slack below which a negative leakage is treated as round-off
_LEAKAGE_ROUNDOFF = 1e-12


@dataclass(frozen=True)
class CouplingParams:
    """Model I. ``m`` is the (symmetric) mutual inductance."""

    l_ss: float
    l_rr: float
    m: float
    r_s: float = 0.0
    r_r: float = 0.0

    def __post_init__(self):
        if not (self.l_ss > 0 and self.l_rr > 0):
            raise ValueError("self-inductances must be positive")
        if self.m < 0:
            raise ValueError("mutual inductance must be >= 0")
        if self.r_s < 0 or self.r_r < 0:
            raise ValueError("winding resistances must be >= 0")

    @property
    def l_s(self):
        return self.l_ss - self.m

    @property
    def l_r(self):
        return self.l_rr - self.m

    def matrix(self):
        return np.array([[self.l_ss, self.m], [self.m, self.l_rr]])


@dataclass(frozen=True)
class SplitLeakageParams:
    """Model II."""

    l_ls1: float
    l_lr1: float
    l_m1: float
    n1: float
    r_s: float = 0.0
    r_r: float = 0.0

    def __post_init__(self):
        if min(self.l_ls1, self.l_lr1, self.l_m1) < 0:
            raise ValueError("inductances must be >= 0")
        if not self.n1 > 0:
            raise ValueError("n1 must be positive")


@dataclass(frozen=True)
class IntegratedLeakageParams:
    """Model III."""

    l_l: float
    l_m: float
    n: float
    r_s: float = 0.0
    r_r: float = 0.0

    def __post_init__(self):
        if self.l_l < 0:
            raise ValueError("leakage inductance must be >= 0")
        if not (self.l_m > 0 and self.n > 0):
            raise ValueError("l_m and n must be positive")

    def matrix(self):
        """The inductance matrix this circuit presents at its terminals."""
        return np.array([
            [self.l_l + self.l_m, self.l_m / self.n],
            [self.l_m / self.n, self.l_m / self.n**2],
        ])

    def with_ratio(self, n):
        return IntegratedLeakageParams(self.l_l, self.l_m, n, self.r_s, self.r_r)


@dataclass(frozen=True)
class LoadImpedance:
    kind: str = "open"  # "open", "resistive" or "series_rl"
    R_L: float = 0.0
    L_L: float = 0.0

    def __post_init__(self):
        if self.kind not in ("open", "resistive", "series_rl"):
            raise ValueError(f"unknown load kind {self.kind!r}")
        if self.R_L < 0 or self.L_L < 0:
            raise ValueError("load R_L and L_L must be >= 0")

    @classmethod
    def open_circuit(cls):
        return cls("open")

    @classmethod
    def resistive(cls, R_L):
        return cls("resistive", R_L=R_L)

    @classmethod
    def series_rl(cls, R_L, L_L):
        return cls("series_rl", R_L=R_L, L_L=L_L)

    @property
    def is_open(self):
        return self.kind == "open"

    def impedance(self, f):
        if self.is_open:
            raise ValueError("an open circuit has no finite impedance")
        s = 2j * np.pi * np.asarray(f, dtype=float)
        return self.R_L + s * self.L_L

    def describe(self):
        if self.kind == "open":
            return "open circuit"
        if self.kind == "resistive":
            return f"R={self.R_L!r} ohm"
        return f"R={self.R_L!r} ohm + L={self.L_L!r} H"


@dataclass(frozen=True)
class FrequencyResponse:
    freqs: np.ndarray
    gains: np.ndarray
    singular: np.ndarray = field(default=None)
    label: str = ""

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=float)
        gains = np.asarray(self.gains, dtype=complex)
        if freqs.shape != gains.shape or freqs.ndim != 1:
            raise ValueError("freqs and gains must be 1-D arrays of equal length")
        if np.any(freqs <= 0) or np.any(np.diff(freqs) <= 0):
            raise ValueError("freqs must be positive and strictly increasing")
        singular = (np.zeros(freqs.shape, dtype=bool) if self.singular is None
                    else np.asarray(self.singular, dtype=bool))
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "singular", singular)

    @property
    def magnitude_db(self):
        with np.errstate(divide="ignore"):
            return 20 * np.log10(np.abs(self.gains))

    @property
    def phase_deg(self):
        return np.degrees(np.unwrap(np.angle(self.gains)))


def coupling_coefficient(p):
    return p.m / math.sqrt(p.l_ss * p.l_rr)


def to_model_ii(p):
    k = coupling_coefficient(p)
    if k > 1:
        raise ValueError(f"coupling coefficient {k!r} exceeds one")
    return SplitLeakageParams(
        l_ls1=(1 - k) * p.l_ss,
        l_lr1=(1 - k) * p.l_rr,
        l_m1=k * p.l_ss,
        n1=math.sqrt(p.l_ss / p.l_rr),
        r_s=p.r_s,
        r_r=p.r_r,
    )


def to_model_iii(p):
    n = p.m / p.l_rr
    l_m = n * p.m
    l_l = p.l_ss - l_m
    if l_l < 0:
        if -l_l > _LEAKAGE_ROUNDOFF * p.l_ss:
            raise NegativeLeakageError(
                f"l_ss={p.l_ss!r} < l_m={l_m!r}: coupling coefficient exceeds one"
            )
        l_l = 0.0
    return IntegratedLeakageParams(l_l=l_l, l_m=l_m, n=n, r_s=p.r_s, r_r=p.r_r)


def from_model_iii(p):
    """Model I parameters with the same terminal inductance matrix."""
    return CouplingParams(l_ss=p.l_l + p.l_m, l_rr=p.l_m / p.n**2, m=p.l_m / p.n,
                          r_s=p.r_s, r_r=p.r_r)


def exact_ratio(p):
    """Effective ratio of the ideal transformer in Model III.

    Written as the coupling coefficient divided by the inductive ratio
    sqrt(l_rr / l_ss); algebraically identical to m / l_rr.
    """
    return coupling_coefficient(p) / math.sqrt(p.l_rr / p.l_ss)


def adjusted_ratio(l_m, l_l, turn_ratio):
    """Turn ratio corrected by the coupling of a lumped-leakage transformer.

    ``sqrt(l_m / (l_m + l_l)) * turn_ratio``. Exact when the turn ratio equals
    sqrt(l_ss / l_rr); approaches the turn ratio as the leakage vanishes.
    """
    if not (l_m > 0 and l_l >= 0 and turn_ratio > 0):
        raise ValueError("need l_m > 0, l_l >= 0 and turn_ratio > 0")
    return math.sqrt(l_m / (l_m + l_l)) * turn_ratio


def from_mec(l_m, l_l, winding, turn_ratio=None):
    """Model III parameters from MEC inductances and the adjusted ratio."""
    if turn_ratio is None:
        turn_ratio = winding.turn_ratio
    return IntegratedLeakageParams(
        l_l=l_l, l_m=l_m, n=adjusted_ratio(l_m, l_l, turn_ratio),
        r_s=winding.r_s, r_r=winding.r_r,
    )


def coupling_from_mec(l_m, l_l, turn_ratio, r_s=0.0, r_r=0.0):
    """Model I parameters built from MEC inductances.

    The MEC yields the stator-referred magnetizing and total leakage
    inductances. The leakage is split evenly between the two windings
    (referred to the stator), and the rotor side is scaled by the turn ratio.
    """
    a = turn_ratio
    return CouplingParams(
        l_ss=l_m + l_l / 2,
        l_rr=(l_m + l_l / 2) / a**2,
        m=l_m / a,
        r_s=r_s,
        r_r=r_r,
    )


# -- transfer functions ---------------------------------------------------


def _check_dc(s, r_s):
    if r_s == 0 and np.any(s == 0):
        raise SingularAtDCError("transfer function is 0/0 at f = 0 with r_s = 0")


def _ratio(num, den):
    num, den = np.broadcast_arrays(num, den)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den != 0, num / np.where(den != 0, den, 1), np.nan + 0j)
    return out[()] if out.ndim == 0 else out


def transfer_model_i(p, z_l, f):
    """v_r / v_s of Model I, evaluated at frequency (or frequencies) ``f``."""
    s = 2j * np.pi * np.asarray(f, dtype=float)
    _check_dc(s, p.r_s)
    l_s, l_r, m = p.l_s, p.l_r, p.m
    if z_l.is_open:
        return _ratio(m * s, (m + l_s) * s + p.r_s)
    z = z_l.impedance(f)
    num = m * z * s
    den = ((l_s * (m + l_r) + m * l_r) * s**2
           + (p.r_s * (m + l_r) + (m + l_s) * (z + p.r_r)) * s
           + p.r_s * (z + p.r_r))
    return _ratio(num, den)


def model_i_denominator_expanded(p, z_l, f):
    """Denominator of the Model I transfer function in terms of l_ss, l_rr, m."""
    s = 2j * np.pi * np.asarray(f, dtype=float)
    z = z_l.impedance(f)
    return ((p.l_ss * p.l_rr - p.m**2) * s**2
            + (p.r_s * p.l_rr + p.l_ss * (z + p.r_r)) * s
            + p.r_s * (z + p.r_r))


def transfer_model_ii(p, z_l, f):
    s = 2j * np.pi * np.asarray(f, dtype=float)
    _check_dc(s, p.r_s)
    n1 = p.n1
    l_lr = n1**2 * p.l_lr1
    r_r = n1**2 * p.r_r
    if z_l.is_open:
        return _ratio(p.l_m1 * s / n1, (p.l_m1 + p.l_ls1) * s + p.r_s)
    z = n1**2 * z_l.impedance(f)
    num = p.l_m1 * z * s / n1
    den = ((p.l_ls1 * (p.l_m1 + l_lr) + p.l_m1 * l_lr) * s**2
           + (p.r_s * (p.l_m1 + l_lr) + (p.l_m1 + p.l_ls1) * (z + r_r)) * s
           + p.r_s * (z + r_r))
    return _ratio(num, den)


def transfer_model_iii(p, z_l, f):
    s = 2j * np.pi * np.asarray(f, dtype=float)
    _check_dc(s, p.r_s)
    n = p.n
    r_r = n**2 * p.r_r
    if z_l.is_open:
        return _ratio(p.l_m * s / n, (p.l_m + p.l_l) * s + p.r_s)
    z = n**2 * z_l.impedance(f)
    num = p.l_m * z * s / n
    den = (p.l_l * p.l_m * s**2
           + (p.r_s * p.l_m + (p.l_m + p.l_l) * (z + r_r)) * s
           + p.r_s * (z + r_r))
    return _ratio(num, den)


_TRANSFER = {
    CouplingParams: transfer_model_i,
    SplitLeakageParams: transfer_model_ii,
    IntegratedLeakageParams: transfer_model_iii,
}

MODEL_NAMES = {CouplingParams: "I", SplitLeakageParams: "II", IntegratedLeakageParams: "III"}


def transfer(p, z_l, f):
    """Dispatch to the transfer function matching the parameter type."""
    return _TRANSFER[type(p)](p, z_l, f)


def log_grid(f_min=10.0, f_max=1e6, n_points=200):
    if not 0 < f_min < f_max:
        raise ValueError(f"need 0 < f_min < f_max, got {f_min!r}, {f_max!r}")
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    if n_points == 1:
        return np.array([float(f_min)])
    return np.logspace(math.log10(f_min), math.log10(f_max), n_points)


def bode_sample(params, z_l, freqs=None, label=""):
    """Sample the transfer function of ``params`` over ``freqs``.

    Defaults to 200 log-spaced points between 10 Hz and 1 MHz. Points where
    the denominator vanishes are flagged in ``singular`` (their gain is NaN).
    """
    freqs = log_grid() if freqs is None else np.asarray(freqs, dtype=float)
    gains = np.atleast_1d(transfer(params, z_l, freqs))
    singular = ~np.isfinite(gains)
    return FrequencyResponse(freqs=freqs, gains=gains, singular=singular,
                             label=label or f"model {MODEL_NAMES[type(params)]}")


def flat_band_gap_db(a, b, tol_db=0.1, min_points=3):
    """Magnitude difference a - b [dB] across the band where both curves are flat.

    A point is in the flat band when each curve is within ``tol_db`` of its own
    maximum. The median of the pointwise difference over that band is returned.
    Raises ``ValueError`` when fewer than ``min_points`` samples qualify, which
    happens when the grid does not reach the flat part of the response.
    """
    ma, mb = a.magnitude_db, b.magnitude_db
    band = (ma >= np.nanmax(ma) - tol_db) & (mb >= np.nanmax(mb) - tol_db)
    if band.sum() < min_points:
        raise ValueError("the two responses share no flat band on this grid")
    return float(np.median(ma[band] - mb[band]))
