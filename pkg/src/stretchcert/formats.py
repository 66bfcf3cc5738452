"""Shared text/JSON encodings: rationals, matrices, polynomials, algebraic reals."""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import PreconditionError
from .exact.field import FieldElement
from .exact.poly import Poly, format_poly, parse_poly
from .exact.roots import AlgebraicReal


def rat_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(obj):
    try:
        if isinstance(obj, bool):
            raise TypeError
        if isinstance(obj, float):
            raise PreconditionError(f"floating point entry {obj!r}; use an exact rational string")
        return Fraction(obj)
    except (TypeError, ValueError, ZeroDivisionError):
        raise PreconditionError(f"not an exact rational: {obj!r}") from None


def matrix_to_json(A):
    return [[rat_str(x) for x in row] for row in A]


def matrix_from_json(obj):
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"matrix is not valid JSON: {exc}") from None
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise PreconditionError("matrix must be a non-empty JSON array of arrays")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise PreconditionError("matrix rows must be non-empty and of equal length")
    return tuple(tuple(parse_rat(x) for x in r) for r in obj)


def poly_to_str(p):
    return format_poly(p)


def poly_from_str(text):
    return parse_poly(text)


def algebraic_to_json(a: AlgebraicReal, digits=12):
    lo, hi = a.interval
    # refine a fresh copy so the output never depends on earlier comparisons
    fresh = AlgebraicReal(a.minpoly, lo, hi, _trusted=True)
    e_lo, e_hi = fresh.refine(Fraction(1, 10 ** digits))
    return {
        "minpoly": format_poly(a.minpoly),
        "interval": [rat_str(lo), rat_str(hi)],
        "enclosure": [_dec(e_lo, digits + 3, -1), _dec(e_hi, digits + 3, 1)],
        "decimal": fresh.decimal(digits),
    }


def _dec(q: Fraction, digits, direction):
    """q written with ``digits`` decimals, rounded down (direction -1) or up (+1)."""
    scaled = q * 10 ** digits
    n = scaled.numerator // scaled.denominator
    if direction > 0 and n * scaled.denominator != scaled.numerator:
        n += 1
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def algebraic_from_json(obj):
    lo, hi = (parse_rat(x) for x in obj["interval"])
    return AlgebraicReal(parse_poly(obj["minpoly"]), lo, hi)


def element_to_json(x: FieldElement):
    """Element of Q(theta) as integer coefficients in theta over a common denominator."""
    num, den = x.common_form()
    return {"numerator": [str(c) for c in num], "denominator": str(den)}


def element_from_json(field, obj):
    den = int(obj["denominator"])
    return field.from_coeffs([Fraction(int(c), den) for c in obj["numerator"]])


def vector_to_json(v):
    return [element_to_json(x) for x in v]


def dumps(doc):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "Poly",
    "algebraic_from_json",
    "algebraic_to_json",
    "dumps",
    "element_from_json",
    "element_to_json",
    "matrix_from_json",
    "matrix_to_json",
    "parse_rat",
    "poly_from_str",
    "poly_to_str",
    "rat_str",
    "vector_to_json",
]
