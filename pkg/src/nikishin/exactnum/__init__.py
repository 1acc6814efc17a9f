"""Scalar fields, polynomials, rational functions, Sturm chains and kernels."""

from .linalg import DegenerateSystem, Matrix, nullspace, rank
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalar import (
    RATIONAL,
    Backend,
    GaussianRational,
    backend_from_name,
    bigfloat,
    format_rational,
    is_exact,
    parse_rational,
    to_fraction,
)
from .sturm import (
    SturmChain,
    count_with_multiplicity,
    exact_gcd,
    integer_primitive,
    is_square_free,
    isolate_roots,
    refine_interval,
    sign_at_roots,
    square_free_part,
    sturm_count,
)

__all__ = [
    "Backend", "RATIONAL", "bigfloat", "backend_from_name", "parse_rational",
    "to_fraction", "format_rational", "is_exact", "GaussianRational",
    "Polynomial", "RationalFunction", "Matrix", "DegenerateSystem", "nullspace",
    "rank", "SturmChain", "sturm_count", "count_with_multiplicity",
    "isolate_roots", "refine_interval", "square_free_part", "is_square_free",
    "integer_primitive", "sign_at_roots", "exact_gcd",
]
