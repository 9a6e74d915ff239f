"""Hilbert class polynomials, Ramanujan t_n polynomials, and their discriminants."""

from .construct import (
    ClassPolynomialResult,
    estimate_bits_hilbert,
    hilbert_class_poly,
    ramanujan_poly,
    verify_ramanujan_poly,
)
from .factor import FactoredInteger, factorize, is_prime
from .lattice import algdep, lll_reduce
from .modfunc import j_invariant, t_value, transform_t_to_j
from .numerics import PrecisionContext
from .polyz import IntPolynomial, discriminant, resultant
from .quadform import QuadForm, class_group, compose, enumerate_reduced, reduce
from .verify import VerificationReport, verify_table_row

__version__ = "0.1.0"

__all__ = [
    "ClassPolynomialResult",
    "FactoredInteger",
    "IntPolynomial",
    "PrecisionContext",
    "QuadForm",
    "VerificationReport",
    "algdep",
    "class_group",
    "compose",
    "discriminant",
    "enumerate_reduced",
    "estimate_bits_hilbert",
    "factorize",
    "hilbert_class_poly",
    "is_prime",
    "j_invariant",
    "lll_reduce",
    "ramanujan_poly",
    "reduce",
    "resultant",
    "t_value",
    "transform_t_to_j",
    "verify_ramanujan_poly",
    "verify_table_row",
]
