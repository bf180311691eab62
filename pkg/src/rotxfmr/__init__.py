"""Analytical models of axial-flux rotary transformers.

Magnetic equivalent circuit for magnetizing and leakage inductance, the three
equivalent electrical circuits and their transfer functions, and the
leakage-corrected transformer ratio for small designs.
"""

__version__ = "0.1.0"

from .analysis import (
    ReferenceDataset,
    SweepSpec,
    airgap_sweep,
    backsolve_turns,
    compare_reference,
    voltage_gain,
)
from .circuits import (
    CouplingParams,
    IntegratedLeakageParams,
    LoadImpedance,
    SplitLeakageParams,
    adjusted_ratio,
    bode_sample,
    coupling_coefficient,
    exact_ratio,
    to_model_ii,
    to_model_iii,
)
from .geometry import (
    MaterialSpec,
    TransformerGeometry,
    WindingSpec,
    derived_dimensions,
    large_design,
    small_design,
    validate_geometry,
)
from .mec import leakage_inductance, magnetizing_inductance, mec_inductances, reluctance_breakdown
