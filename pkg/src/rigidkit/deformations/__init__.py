"""T^1 and T^2 of singularity presentations and the local-to-global deformation ledger."""

from .graded import GradedMatrix, chain_shifts, graded_matrix, infer_shifts, jacobian, zero_matrix
from .ledger import DeformationLedger, Estimate, local_to_global
from .presentation import (
    PRESETS,
    SingularityPresentation,
    format_presentation,
    hypersurface,
    load_presentation,
    parse_presentation,
    preset,
)
from .t1 import (
    DEFAULT_DEGREE_BOUND,
    DEFAULT_WINDOW,
    ComplexFailure,
    ComplexReport,
    DegreePiece,
    NoStabilization,
    T1Report,
    as_matrix,
    composite_residues,
    default_degree_bound,
    graded_subquotient_dim,
    hypersurface_t1,
    presentation_t1,
    verify_complex,
    verify_membership,
)
