"""Singleton-optimal locally repairable codes (d = 6, r = 3) from 4-local arcs in PG(2, q)."""

from .arcs import (
    ArcBlock,
    FourLocalArc,
    UnsupportedOrder,
    build,
    build_even,
    build_odd,
    exhaustive_search,
    expected_size,
    validate_local_arc,
)
from .gf import FieldElement, FieldSpec, enum_binary_order, field_new
from .lrc import (
    LrcParams,
    ParityCheckMatrix,
    arc_to_parity,
    code_params,
    length_upper_bound,
    min_distance,
    singleton_defect,
    verify_locality,
)

__version__ = "0.1.0"
