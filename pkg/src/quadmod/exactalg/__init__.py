"""Exact linear algebra and finite-dimensional commutative algebra kernel."""

from .field import GF, QQ, Field, parse_field
from .linalg import LinMap, QuotientSpace, Subspace, kernel, rref, unit_vector, vadd, vcomb, vscale, vsub, zero_vector
from .algebra import (
    Action,
    AlgebraError,
    AlgMorphism,
    DescentError,
    FinAlgebra,
    Ideal,
    InvalidStructure,
    Quotient,
    Semidirect,
    as_ideal,
    ideal_closure,
    is_ideal,
    product_span,
    quotient_algebra,
    semidirect,
    singularise,
    subalgebra,
    validate_action,
    validate_algebra,
    validate_morphism,
    zero_algebra,
)
from .bilinear import Bilinear
from .polynomial import basis_vector, monomial_ideal, truncated_polynomial

__all__ = [name for name in dir() if not name.startswith("_")]
