"""Studies built on the MEC and circuit models: airgap sweeps, turn-count
back-solving, comparison against reference data and voltage-gain prediction."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import circuits, mec
from .circuits import IntegratedLeakageParams, LoadImpedance
from .errors import (
    EmptyReferenceError,
    ExtrapolationError,
    GeometryError,
    LogDomainError,
    UnitMismatchError,
)
from .geometry import MaterialSpec, WindingSpec, validate_geometry


@dataclass(frozen=True)
class SweepSpec:
    g_min: float
    g_max: float
    n_points: int
    geometry: object
    winding: WindingSpec
    material: MaterialSpec = field(default_factory=MaterialSpec)
    scale: str = "linear"

    def __post_init__(self):
        if not 0 < self.g_min < self.g_max:
            raise ValueError(f"need 0 < g_min < g_max, got {self.g_min!r}, {self.g_max!r}")
        if self.n_points < 2:
            raise ValueError("a sweep needs at least two points")
        if self.scale not in ("linear", "logarithmic"):
            raise ValueError(f"unknown scale {self.scale!r}")

    def airgaps(self):
        if self.scale == "linear":
            return np.linspace(self.g_min, self.g_max, self.n_points)
        return np.geomspace(self.g_min, self.g_max, self.n_points)


@dataclass(frozen=True)
class SweepRow:
    g: float
    l_m: float = math.nan
    l_l: float = math.nan
    n_adjusted: float = math.nan
    gap_share: float = math.nan
    skipped: str = ""  # reason, empty for valid rows

    @property
    def valid(self):
        return not self.skipped


@dataclass(frozen=True)
class SweepResult:
    rows: tuple

    @property
    def valid_rows(self):
        return [r for r in self.rows if r.valid]

    @property
    def skipped_rows(self):
        return [r for r in self.rows if not r.valid]

    def column(self, name):
        """Values of ``name`` over the valid rows, in airgap order."""
        return np.array([getattr(r, name) for r in self.valid_rows])


def evaluate_point(geometry, winding, material=None):
    """MEC inductances, adjusted ratio and gap share for one geometry."""
    validate_geometry(geometry, warn=False)
    res = mec.mec_inductances(geometry, winding, material)
    return SweepRow(
        g=geometry.g,
        l_m=res.l_m,
        l_l=res.l_l,
        n_adjusted=circuits.adjusted_ratio(res.l_m, res.l_l, winding.turn_ratio),
        gap_share=res.breakdown.gap_share,
    )


def _sweep_point(spec, g):
    try:
        return evaluate_point(spec.geometry.with_airgap(g), spec.winding, spec.material)
    except (GeometryError, LogDomainError) as exc:
        return SweepRow(g=g, skipped=str(exc).replace("\n", "; "))


def airgap_sweep(spec, max_workers=None):
    """Evaluate the MEC over the airgaps of ``spec``.

    Points whose geometry is invalid (typically the window-side fringe radius
    collapsing at large gaps) are kept as skipped rows. With ``max_workers``
    the points are evaluated on a thread pool; row order is always the
    airgap order.
    """
    gaps = [float(g) for g in spec.airgaps()]
    if max_workers:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(lambda g: _sweep_point(spec, g), gaps))
    else:
        rows = [_sweep_point(spec, g) for g in gaps]
    return SweepResult(rows=tuple(rows))


def backsolve_turns(geom, target_leakage):
    """Stator turns giving ``target_leakage`` through the closed-form leakage.

    Returns ``(estimate, nearest_integer)``.
    """
    if not target_leakage > 0:
        raise ValueError("target leakage must be positive")
    n = math.sqrt(target_leakage / mec.leakage_coefficient(geom))
    return n, max(1, round(n))


# -- reference data -------------------------------------------------------


@dataclass(frozen=True)
class ReferenceDataset:
    """A named series of (x, value) points with units."""

    label: str
    x: np.ndarray
    values: np.ndarray
    unit: str
    x_unit: str = "m"
    provenance: str = ""

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        v = np.atleast_1d(np.asarray(self.values, dtype=float))
        if x.size == 0:
            raise EmptyReferenceError(f"reference dataset {self.label!r} has no points")
        if x.shape != v.shape:
            raise ValueError("x and values must have the same length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def points(self):
        return [(float(a), float(b), self.unit) for a, b in zip(self.x, self.values)]


@dataclass(frozen=True)
class ComparisonReport:
    label: str
    x: np.ndarray
    model: np.ndarray
    reference: np.ndarray
    rel_error: np.ndarray
    threshold: float

    @property
    def max_error(self):
        return float(np.max(self.rel_error))

    @property
    def mean_error(self):
        return float(np.mean(self.rel_error))

    @property
    def passed(self):
        return self.max_error <= self.threshold


def _interp_onto(model, x):
    order = np.argsort(model.x)
    mx, mv = model.x[order], model.values[order]
    span = (mx[0], mx[-1])
    tol = 1e-12 * max(abs(span[0]), abs(span[1]), 1e-300)
    outside = (x < span[0] - tol) | (x > span[1] + tol)
    if np.any(outside):
        raise ExtrapolationError(
            f"reference x {x[outside].tolist()} outside model range [{span[0]!r}, {span[1]!r}]"
        )
    if mx.size == 1:
        return np.full_like(x, mv[0])
    return np.interp(x, mx, mv)


def compare_reference(model, ref, threshold=0.10):
    """Pointwise relative error of ``model`` against ``ref``.

    ``model`` is a :class:`ReferenceDataset` (or anything with ``x``,
    ``values``, ``unit`` and ``x_unit``); it is linearly interpolated onto the
    reference abscissae. Extrapolation is refused.
    """
    if len(ref.x) == 0:
        raise EmptyReferenceError(ref.label)
    if model.unit != ref.unit or model.x_unit != ref.x_unit:
        raise UnitMismatchError(
            f"model in ({model.x_unit}, {model.unit}) vs reference in "
            f"({ref.x_unit}, {ref.unit})"
        )
    mv = _interp_onto(model, ref.x)
    with np.errstate(divide="ignore", invalid="ignore"):
        err = np.where(mv == ref.values, 0.0, np.abs(mv - ref.values) / np.abs(ref.values))
    return ComparisonReport(label=ref.label, x=ref.x.copy(), model=mv,
                            reference=ref.values.copy(), rel_error=err, threshold=threshold)


def sweep_dataset(result, quantity, unit):
    """A sweep column as a dataset, ready for :func:`compare_reference`."""
    rows = result.valid_rows
    return ReferenceDataset(
        label=f"model {quantity}",
        x=[r.g for r in rows],
        values=[getattr(r, quantity) for r in rows],
        unit=unit,
        x_unit="m",
    )


# -- voltage gain ---------------------------------------------------------


@dataclass(frozen=True)
class GainStudy:
    v_exc: float  # stator excitation amplitude [V]
    f_exc: float  # [Hz]
    load: LoadImpedance
    airgap: float  # [m]


@dataclass(frozen=True)
class GainResult:
    v_stator: float
    v_rotor: float
    params: IntegratedLeakageParams


def voltage_gain(study, params):
    """Rotor voltage for a stiff stator source across Model III ``params``."""
    if not study.f_exc > 0:
        raise ValueError("excitation frequency must be positive")
    h = circuits.transfer_model_iii(params, study.load, study.f_exc)
    return GainResult(v_stator=study.v_exc, v_rotor=float(abs(h)) * study.v_exc, params=params)


def mec_params(geometry, winding, material=None):
    """Model III parameters for ``geometry`` via MEC and the adjusted ratio."""
    res = mec.mec_inductances(geometry, winding, material)
    return circuits.from_mec(res.l_m, res.l_l, winding)


def predict_gain(study, base_geometry, winding, material=None):
    """MEC-backed voltage gain at the study's airgap."""
    geom = validate_geometry(base_geometry.with_airgap(study.airgap), warn=False)
    return voltage_gain(study, mec_params(geom, winding, material))


def resistance_sensitivity(study, base_geometry, winding, material=None,
                           resistances=(0.0, 0.5, 1.0, 2.0)):
    """Rotor voltage with equal stator/rotor resistances set to each of ``resistances``."""
    out = []
    for r in resistances:
        w = replace(winding, r_s=r, r_r=r)
        out.append((r, predict_gain(study, base_geometry, w, material)))
    return out
