"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest degree first as :class:`fractions.Fraction`.
An "integer polynomial" is just a :class:`Poly` whose coefficients all have
denominator 1; :meth:`Poly.primitive` produces the canonical integer
representative of a polynomial up to scaling.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from ..errors import PreconditionError


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # construction -----------------------------------------------------
    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots):
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @classmethod
    def parse(cls, text):
        return parse_poly(text)

    # basic properties -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def is_monic(self):
        return self.lead == 1

    def int_coeffs(self):
        if not self.is_integral():
            raise PreconditionError(f"polynomial {self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def is_reciprocal(self):
        """Palindromic coefficient list (x^n p(1/x) = p(x)) with nonzero constant term."""
        return bool(self.coeffs) and self.coeffs[0] != 0 and self.coeffs == self.coeffs[::-1]

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), Poly(rem)
        quo = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c == 0:
                continue
            quo[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be anything closed under + and *."""
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    # derived polynomials ----------------------------------------------
    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def primitive(self):
        """Integer polynomial with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Poly([c // g for c in ints])

    def gcd(self, other):
        a, b = self, _coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        if self.degree < 1:
            return self
        g = self.gcd(self.derivative())
        return (self // g).primitive()

    def compose(self, inner):
        """self(inner(x))."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + Poly([c])
        return out

    def reverse(self):
        return Poly(self.coeffs[::-1])

    def shift_sign(self):
        """p(-x)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def factor(self):
        """Irreducible factorisation over Q as [(primitive factor, multiplicity)].

        Factors are sorted by (degree, coefficients) so the output order is stable.
        """
        if self.degree < 1:
            return []
        import sympy

        x = sympy.Symbol("x")
        prim = self.primitive()
        sp = sympy.Poly([int(c) for c in reversed(prim.coeffs)], x, domain="ZZ")
        _, facs = sp.factor_list()
        out = []
        for f, m in facs:
            out.append((Poly([int(c) for c in reversed(f.all_coeffs())]).primitive(), m))
        out.sort(key=lambda fm: (fm[0].degree, [int(c) for c in fm[0].coeffs]))
        return out

    def is_irreducible(self):
        fs = self.factor()
        return len(fs) == 1 and fs[0][1] == 1

    # presentation -----------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


X = Poly([0, 1])


def _coerce(obj):
    return obj if isinstance(obj, Poly) else Poly([obj])


def reciprocal_lift(g):
    """x^d g(x + 1/x) for g of degree d."""
    d = g.degree
    out = Poly()
    x2p1 = Poly([1, 0, 1])
    for k, c in enumerate(g.coeffs):
        out = out + (x2p1 ** k) * Poly.monomial(d - k) * c
    return out


def format_poly(p, var="x"):
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a}{mono}"
            else:
                body = f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(?:([A-Za-z]\w*)(?:\^(\d+))?)?$")


def parse_poly(text, var=None):
    """Parse ASCII polynomials such as ``x^4-x^3-x^2-x+1`` or ``1/2+1/2*t``."""
    src = text.replace(" ", "").replace("**", "^")
    if not src:
        raise PreconditionError(f"cannot parse polynomial {text!r}: empty")
    if src[0] not in "+-":
        src = "+" + src
    terms = re.findall(r"([+-])([^+-]+)", src)
    if "".join(s + t for s, t in terms) != src:
        raise PreconditionError(f"cannot parse polynomial {text!r}")
    coeffs = {}
    for sign, body in terms:
        m = _TERM.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise PreconditionError(f"cannot parse term {body!r} in {text!r}")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2) is None:
            deg = 0
        else:
            if var is None:
                var = m.group(2)
            elif m.group(2) != var:
                raise PreconditionError(f"mixed variables {var!r} and {m.group(2)!r} in {text!r}")
            deg = int(m.group(3)) if m.group(3) else 1
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + (coef if sign == "+" else -coef)
    top = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(top + 1)])


def parse_int_poly(text):
    p = parse_poly(text)
    if not p.is_integral():
        raise PreconditionError(f"{text!r} must have integer coefficients")
    if p.is_zero():
        raise PreconditionError("zero polynomial")
    return p
