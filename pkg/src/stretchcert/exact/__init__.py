"""Exact arithmetic foundation: polynomials, real roots, number fields, Salem tests."""

from .field import FieldElement, NumberField
from .poly import Poly, X, parse_int_poly, parse_poly, reciprocal_lift
from .roots import AlgebraicReal, isolate_roots, select_root
from .salem import (
    NOT_SALEM,
    QUADRATIC_UNIT,
    SALEM,
    SalemClassification,
    classify_salem,
    power_minpoly,
    trace_polynomial,
)

__all__ = [
    "AlgebraicReal",
    "FieldElement",
    "NumberField",
    "Poly",
    "X",
    "SalemClassification",
    "SALEM",
    "QUADRATIC_UNIT",
    "NOT_SALEM",
    "classify_salem",
    "isolate_roots",
    "parse_int_poly",
    "parse_poly",
    "power_minpoly",
    "reciprocal_lift",
    "select_root",
    "trace_polynomial",
]
