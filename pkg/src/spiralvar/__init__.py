"""Variation, Hölder parametrization and ring analysis of sampled spiral arcs."""

from __future__ import annotations

__version__ = "0.1.0"

from .arc import Point, SampledArc, SubarcRange, arc_length, diameter, is_injective, reversed_arc
from .arcfiles import load_arc, read_arc_file, save_arc
from .classify import (
    AlmostCircularityReport,
    ConvergenceVerdict,
    GrowthResult,
    SandwichReport,
    almost_circularity,
    classify_spiral,
    growth_rate,
    ring_variations,
    sandwich_check,
    sandwich_from_arc,
)
from .config import RunConfig, load_config
from .errors import (
    AlignmentError,
    ArcError,
    ArcFormatError,
    DegenerateArcError,
    GridMismatchError,
    ParameterError,
    RangeError,
    SizeError,
    SpiralvarError,
)
from .reparam import (
    HolderParam,
    HolderSeminorm,
    build_param,
    certificate_max_violation,
    discrete_seminorm,
    seminorm_of_coords,
)
from .spiral import Ring, RingDecomposition, SpiralSpec, decompose_rings, generate, phi_sequence
from .stretch import (
    ExponentBounds,
    HolderEstimate,
    StretchMap,
    apply_stretch,
    empirical_holder,
    exponent_bounds,
)
from .variation import (
    N_CAP,
    VariationResult,
    batch_s_variation_values,
    brute_force_variation,
    refinement_study,
    s_variation,
)

__all__ = [
    "__version__",
    "AlignmentError",
    "AlmostCircularityReport",
    "ArcError",
    "ArcFormatError",
    "ConvergenceVerdict",
    "DegenerateArcError",
    "ExponentBounds",
    "GridMismatchError",
    "GrowthResult",
    "HolderEstimate",
    "HolderParam",
    "HolderSeminorm",
    "N_CAP",
    "ParameterError",
    "Point",
    "RangeError",
    "Ring",
    "RingDecomposition",
    "RunConfig",
    "SampledArc",
    "SandwichReport",
    "SizeError",
    "SpiralSpec",
    "SpiralvarError",
    "StretchMap",
    "SubarcRange",
    "VariationResult",
    "almost_circularity",
    "apply_stretch",
    "arc_length",
    "batch_s_variation_values",
    "brute_force_variation",
    "build_param",
    "certificate_max_violation",
    "classify_spiral",
    "decompose_rings",
    "diameter",
    "discrete_seminorm",
    "empirical_holder",
    "exponent_bounds",
    "generate",
    "growth_rate",
    "is_injective",
    "load_arc",
    "load_config",
    "phi_sequence",
    "read_arc_file",
    "refinement_study",
    "reversed_arc",
    "ring_variations",
    "s_variation",
    "sandwich_check",
    "sandwich_from_arc",
    "save_arc",
    "seminorm_of_coords",
]
