"""Trace polynomials of reciprocal polynomials and Salem classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import PreconditionError
from .poly import Poly, reciprocal_lift
from .roots import AlgebraicReal, count_roots, isolate_roots, root_bound, sturm_sequence

SALEM = "Salem"
QUADRATIC_UNIT = "QuadraticReciprocalUnit"
NOT_SALEM = "NotSalem"


@dataclass(frozen=True)
class SalemClassification:
    verdict: str
    salem_root: Optional[AlgebraicReal] = None
    reason: str = ""
    minpoly: Optional[Poly] = None

    @property
    def accepted(self):
        """True for the verdicts the Salem certificate chain accepts."""
        return self.verdict in (SALEM, QUADRATIC_UNIT)


def dickson(k):
    """V_k(t) with V_k(x + 1/x) = x^k + x^-k."""
    v0, v1 = Poly([2]), Poly([0, 1])
    if k == 0:
        return v0
    for _ in range(k - 1):
        v0, v1 = v1, Poly([0, 1]) * v1 - v0
    return v1


def trace_polynomial(p):
    """The degree-d polynomial g with p(x) = x^d g(x + 1/x) for reciprocal p of degree 2d."""
    if not p.is_reciprocal():
        raise PreconditionError(f"{p} is not reciprocal")
    if p.degree % 2:
        raise PreconditionError(f"{p} has odd degree")
    d = p.degree // 2
    g = Poly([p[d]])
    for k in range(1, d + 1):
        g = g + dickson(k) * p[d + k]
    assert reciprocal_lift(g) == p
    return g


def classify_salem(p):
    """Classify the largest real root of monic integer p.

    Unit-circle membership is decided through the trace polynomial: the
    remaining roots of a reciprocal p lie on the unit circle exactly when the
    corresponding roots of the trace polynomial are real and inside (-2, 2).
    """
    if p.is_zero() or not p.is_monic() or not p.is_integral():
        raise PreconditionError(f"{p} must be a monic integer polynomial")
    if not p.is_reciprocal():
        return SalemClassification(NOT_SALEM, reason="not reciprocal")
    if p.degree % 2:
        return SalemClassification(NOT_SALEM, reason="odd degree reciprocal polynomial has root -1")
    if not p.is_irreducible():
        return SalemClassification(NOT_SALEM, reason="reducible")
    g = trace_polynomial(p)
    d = g.degree
    seq = sturm_sequence(g)
    B = max(root_bound(g), Fraction(4))
    two = Fraction(2)
    above = count_roots(g, two, B, seq)
    inside = count_roots(g, -two, two, seq) - (1 if g(two) == 0 else 0)
    total = count_roots(g, -B, B, seq)
    if g(two) == 0 or g(-two) == 0:
        return SalemClassification(NOT_SALEM, reason="trace root at ±2")
    if above != 1:
        return SalemClassification(NOT_SALEM, reason=f"{above} trace roots exceed 2")
    if total != d:
        return SalemClassification(NOT_SALEM, reason="trace polynomial not totally real")
    if inside != d - 1:
        return SalemClassification(NOT_SALEM, reason="a conjugate lies off the unit circle")
    lam = isolate_roots(p)[-1]
    verdict = QUADRATIC_UNIT if p.degree == 2 else SALEM
    return SalemClassification(verdict, lam, minpoly=p)


def power_minpoly(alpha, k):
    """Minimal polynomial of alpha^k via the characteristic polynomial of C^k."""
    from .linalg import charpoly, mat_pow
    C = companion(alpha.minpoly.monic())
    return charpoly(mat_pow(C, k)).squarefree_part().primitive()


def companion(p):
    """Companion matrix of monic p (acts on the power basis 1, x, ..., x^{n-1})."""
    n = p.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -p[i]
    return tuple(tuple(r) for r in rows)
