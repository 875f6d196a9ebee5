"""Exact construction and verification of a degree-7 Cremona family of P^5."""

from .family import (
    D,
    FamilyParams,
    GeneralizedSpec,
    RationalMap,
    build_generalized,
    build_gst,
    common_factor_check,
    compose,
    identity_map,
    verify_discriminant_identity,
    verify_group_law,
    verify_inverse,
)
from .point import ProjectivePoint
from .poly import Polynomial, evaluate, exact_divide, format_poly, parse_poly, substitute

__version__ = "0.1.0"

__all__ = [
    "D",
    "FamilyParams",
    "GeneralizedSpec",
    "Polynomial",
    "ProjectivePoint",
    "RationalMap",
    "build_generalized",
    "build_gst",
    "common_factor_check",
    "compose",
    "evaluate",
    "exact_divide",
    "format_poly",
    "identity_map",
    "parse_poly",
    "substitute",
    "verify_discriminant_identity",
    "verify_group_law",
    "verify_inverse",
]
