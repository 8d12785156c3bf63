"""Exact arithmetic kernel: polynomials, Groebner bases, integer and rational linear algebra."""

from .groebner import (
    INFINITE,
    GroebnerBasis,
    Reducer,
    buchberger,
    graded_piece_basis,
    is_groebner,
    monomials_of_degree,
    normal_form,
    quotient_dimension,
    s_polynomial,
    standard_monomials,
)
from .linalg import (
    SNFDecomposition,
    bareiss,
    det,
    mat_mul,
    rat_kernel,
    rat_rank,
    smith_normal_form,
    sparse_rank,
)
from .polynomial import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    Ring,
    format_polynomial,
    parse_polynomial,
    polynomial_ring,
    weighted,
)

__all__ = [
    "DEGREVLEX", "INFINITE", "LEX", "GroebnerBasis", "MonomialOrder", "Polynomial", "Reducer",
    "Ring", "SNFDecomposition", "bareiss", "buchberger", "det", "format_polynomial",
    "graded_piece_basis", "is_groebner", "mat_mul", "monomials_of_degree", "normal_form",
    "parse_polynomial", "polynomial_ring", "quotient_dimension", "rat_kernel", "rat_rank",
    "s_polynomial", "smith_normal_form", "sparse_rank", "standard_monomials", "weighted",
]
