"""Exact scalars: Q(zeta) at an odd root of unity, Chebyshev machinery, Laurent fractions."""

from .chebyshev import (
    ChebPoly,
    chebyshev_collect,
    chebyshev_expand,
    chebyshev_t,
    chebyshev_trace_filter,
    poly_compose,
    poly_mul,
    residue_split,
)
from .cyclotomic import Cyclo, CyclotomicField, cyclotomic_polynomial
from .laurent import CommutativeFraction, LaurentPoly

__all__ = [
    "ChebPoly",
    "CommutativeFraction",
    "Cyclo",
    "CyclotomicField",
    "LaurentPoly",
    "chebyshev_collect",
    "chebyshev_expand",
    "chebyshev_t",
    "chebyshev_trace_filter",
    "cyclotomic_polynomial",
    "poly_compose",
    "poly_mul",
    "residue_split",
]
