"""Toric surfaces: fans, divisor cohomology, intersection theory, projective space."""

from .cohomology import (
    CertificateError,
    CohomologyCertificate,
    CohomologyVector,
    DivisorPolytope,
    TangentCohomology,
    canonical_divisor,
    class_group,
    cohomology_with_certificate,
    divisor_cohomology,
    divisor_sections,
    intersect,
    intersection_matrix,
    is_cartier,
    is_nef,
    riemann_roch,
    search_bound,
    tangent_cohomology,
)
from .fan import (
    Fan2,
    cone_quotient_type,
    det2,
    format_fan_text,
    load_fan,
    m12_fan,
    parse_fan_text,
    primitive,
    sorted_fan,
    weighted_blowup,
    wps_fan,
)
from .kernels import scan_box
from .projective import bott_projective, kunneth, kunneth_table, projective_table, serre_duality_check
