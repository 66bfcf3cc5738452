"""Arithmetic in Q(theta) for a real algebraic theta, with exact sign decisions."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from .linalg import charpoly
from .poly import Poly
from .roots import AlgebraicReal, iv_horner, select_root


class NumberField:
    """Q(theta) with elements stored as polynomials in theta of degree < deg(theta)."""

    def __init__(self, theta: AlgebraicReal):
        self.theta = theta
        self.modulus = theta.minpoly.monic()
        self.degree = theta.minpoly.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.theta == other.theta

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({self.theta.minpoly})"

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, Poly):
            return FieldElement(self, value % self.modulus)
        return FieldElement(self, Poly([value]))

    @property
    def zero(self):
        return FieldElement(self, Poly())

    @property
    def one(self):
        return FieldElement(self, Poly([1]))

    @property
    def gen(self):
        return self(Poly([0, 1]))

    def from_coeffs(self, coeffs):
        return self(Poly(coeffs))


class FieldElement:
    __slots__ = ("field", "poly")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, FieldElement):
            return other
        return FieldElement(self.field, Poly([other]))

    def __add__(self, other):
        other = self._lift(other)
        return FieldElement(self.field, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.poly)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return FieldElement(self.field, (self.poly * other.poly) % self.field.modulus)
        return FieldElement(self.field, self.poly * Fraction(other))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: s * poly + t * modulus = 1
        r0, r1 = self.field.modulus, self.poly
        s0, s1 = Poly(), Poly([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant since the modulus is irreducible
        return FieldElement(self.field, (s0 * (1 / r0.lead)) % self.field.modulus)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.poly == Poly([other])
        if isinstance(other, FieldElement):
            return self.poly == other.poly
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.poly)

    def is_rational(self):
        return self.poly.degree <= 0

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.poly[0]

    # real-valued information -------------------------------------------
    def enclosure(self, width=None):
        """Rational interval containing this element's real value."""
        theta = self.field.theta
        if width is not None:
            theta.refine(width)
        return iv_horner(self.poly, theta.enclosure())

    def sign(self):
        if self.is_zero():
            return 0
        theta = self.field.theta
        while True:
            lo, hi = iv_horner(self.poly, theta.enclosure())
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            theta._bisect()

    def compare(self, other):
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 1 << 70))
        return float((lo + hi) / 2)

    # algebraic information ---------------------------------------------
    def multiplication_matrix(self):
        n = self.field.degree
        cols = []
        for k in range(n):
            prod = (self.poly * Poly.monomial(k)) % self.field.modulus
            cols.append([prod[i] for i in range(n)])
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def charpoly(self):
        return charpoly(self.multiplication_matrix())

    def minpoly(self):
        """Primitive integer minimal polynomial over Q (squarefree part of the charpoly)."""
        return self.charpoly().squarefree_part().primitive()

    def to_algebraic(self):
        mp = self.minpoly()
        if mp.degree == 1:
            return AlgebraicReal.rational(-mp.coeffs[0] / mp.coeffs[1])
        theta = self.field.theta

        def enclosure(k):
            if k:
                theta._bisect()
            return iv_horner(self.poly, theta.enclosure())

        return select_root(mp, enclosure)

    def common_form(self):
        """(integer numerator coefficients, positive common denominator)."""
        den = reduce(lcm, (c.denominator for c in self.poly.coeffs), 1)
        return [int(c * den) for c in self.poly.coeffs], den

    def __str__(self):
        from .poly import format_poly
        return format_poly(self.poly, "θ")

    def __repr__(self):
        return f"FieldElement({self}, ~{float(self):.12g})"
