"""Newton polygons of reductions of CM abelian varieties from Galois group data."""

from .cm import (
    CMFieldData,
    CMTypeLift,
    enumerate_cm_types,
    induced_type,
    is_primitive,
    type_stabilizer,
    validate_cm_field,
    validate_cm_type,
)
from .cyclotomic import UnitGroupModN, decomposition_and_inertia, frobenius_order, unit_group
from .groups import (
    DoubleCoset,
    FiniteGroup,
    Subgroup,
    double_cosets,
    double_cosets_naive,
    group_from_generators,
    is_central,
    subgroup_generated,
)
from .newton import (
    NewtonPolygon,
    PrimeContext,
    SlopeBlock,
    SplittingReport,
    check_criteria,
    classify,
    evaluate,
    newton_polygon,
    prime_context,
    splitting_report,
)
from .oracle import CURVES, ShortWeierstrassCurve, count_points, deuring_agreement, newton_from_trace

__version__ = "0.1.0"

__all__ = [
    "CMFieldData",
    "CMTypeLift",
    "CURVES",
    "DoubleCoset",
    "FiniteGroup",
    "NewtonPolygon",
    "PrimeContext",
    "ShortWeierstrassCurve",
    "SlopeBlock",
    "SplittingReport",
    "Subgroup",
    "UnitGroupModN",
    "check_criteria",
    "classify",
    "count_points",
    "decomposition_and_inertia",
    "deuring_agreement",
    "double_cosets",
    "double_cosets_naive",
    "enumerate_cm_types",
    "evaluate",
    "frobenius_order",
    "group_from_generators",
    "induced_type",
    "is_central",
    "is_primitive",
    "newton_from_trace",
    "newton_polygon",
    "prime_context",
    "splitting_report",
    "subgroup_generated",
    "type_stabilizer",
    "unit_group",
    "validate_cm_field",
    "validate_cm_type",
]
