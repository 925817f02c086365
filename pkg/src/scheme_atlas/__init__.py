"""Exact spectral data and verification for bivariate Q-polynomial schemes."""
from .core import (
    GRLEX,
    LEX,
    Domain,
    IntersectionTensor,
    KreinTensor,
    MonomialOrder,
    SpectralTable,
    check_p_polynomial,
    check_q_polynomial,
    intersection_tensor,
    krein_tensor,
)
from .exact import Rational, binomial, q_binomial, q_number
from .families import (
    FamilyParams,
    attenuated_table,
    bilinear_table,
    grassmann_table,
    hamming_table,
    johnson_table,
    nonbinary_johnson_table,
    verify_closed_forms,
)

__version__ = "0.1.0"

__all__ = [
    "GRLEX", "LEX", "Domain", "IntersectionTensor", "KreinTensor", "MonomialOrder",
    "SpectralTable", "check_p_polynomial", "check_q_polynomial", "intersection_tensor",
    "krein_tensor", "Rational", "binomial", "q_binomial", "q_number", "FamilyParams",
    "attenuated_table", "bilinear_table", "grassmann_table", "hamming_table", "johnson_table",
    "nonbinary_johnson_table", "verify_closed_forms",
]
