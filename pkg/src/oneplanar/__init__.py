"""Toolkit for 1-planar diagrams: validation, face tracing, exact-rational
discharging, typed light-subgraph search, and the copy-gluing construction."""

from .diagram import (
    Diagram,
    SimpleGraph,
    ValidationReport,
    parse,
    serialize,
    smooth,
    true_degrees,
    validate,
)
from .embedding import (
    BIG,
    FALSE_TRIANGLE,
    TRUE_TRIANGLE,
    Face,
    FaceSet,
    classify,
    euler_check,
    false_triangle_parity,
    incident_faces,
    trace_faces,
)
from .charge import (
    SCHEME_A,
    SCHEME_B,
    ChargeState,
    Transfer,
    Witness,
    apply_rule_set_a,
    apply_rule_set_b,
    apply_rule_set_c,
    extract_witness,
    initial_charges,
    negative_elements,
    replay,
    total_charge,
)
from .patterns import (
    DegreeInterval,
    TypedPattern,
    catalog,
    catalog_by_name,
    check_guarantees,
    find_typed,
    oracle_find_typed,
)
from .construct import GlueSpec, fixture, glue

__version__ = "0.1.0"
