from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import symmetric
from stretchcert.errors import PreconditionError
from stretchcert.exact.field import NumberField
from stretchcert.exact.linalg import charpoly, det, inverse, mat_mul, identity, hermite_basis
from stretchcert.exact.poly import Poly, format_poly, parse_int_poly, parse_poly, reciprocal_lift
from stretchcert.exact.roots import AlgebraicReal, isolate_roots
from stretchcert.exact.salem import (NOT_SALEM, QUADRATIC_UNIT, SALEM, classify_salem, dickson,
                                     trace_polynomial)

LEHMER = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"


def test_parse_format_roundtrip():
    for text in ["x^4-x^3-x^2-x+1", "t^2-t-3", "3", "-x", "2*x^3 - 1/2*x"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p
    assert parse_poly("t^2-t-3") == Poly([-3, -1, 1])


def test_parse_rejects_garbage():
    with pytest.raises(PreconditionError):
        parse_int_poly("x^2 + 1/2")
    with pytest.raises(PreconditionError):
        parse_poly("x^2 + y")


def test_isolate_roots_matches_numpy():
    p = parse_poly("x^5 - 7x^3 + 3x^2 + 5x - 1")
    ours = [float(r) for r in isolate_roots(p)]
    ref = sorted(r.real for r in np.roots([1, 0, -7, 3, 5, -1]) if abs(r.imag) < 1e-9)
    assert ours == pytest.approx(ref, abs=1e-9)


def test_algebraic_compare_and_decimal():
    r5 = isolate_roots(parse_poly("x^2-5"))[1]
    assert r5.decimal(10) == "2.2360679775"
    assert r5 > Fraction(2236, 1000) and r5 < Fraction(2237, 1000)
    r5b = AlgebraicReal(parse_poly("x^2-5"), 1, 3)
    assert r5 == r5b and r5 != isolate_roots(parse_poly("x^2-5"))[0]
    with pytest.raises(PreconditionError):
        AlgebraicReal(parse_poly("x^2-5"), -3, 3)


def test_field_sign_of_tiny_element():
    # 99 - 70 sqrt2 ~ 0.00505 > 0 and its negative
    K = NumberField(isolate_roots(parse_poly("x^2-2"))[1])
    a = 99 - 70 * K.gen
    assert a.sign() == 1 and (-a).sign() == -1
    assert (a * (99 + 70 * K.gen)) == K(1)
    assert a.inverse() == 99 + 70 * K.gen


def test_field_minpoly():
    K = NumberField(isolate_roots(parse_poly("x^3-3x+1"))[2])
    t = K.gen
    assert (t * t - 2).minpoly() == parse_poly("x^3-3x+1")  # Galois cyclic cubic
    assert K(Fraction(3, 2)).minpoly() == parse_poly("2x-3").primitive()


def test_dickson():
    assert dickson(2) == parse_poly("x^2-2")
    assert dickson(3) == parse_poly("x^3-3x")
    assert dickson(6) == parse_poly("x^6-6x^4+9x^2-2")


def test_trace_polynomial_example():
    assert trace_polynomial(parse_poly("x^4-x^3-x^2-x+1")) == parse_poly("t^2-t-3")
    g = trace_polynomial(parse_poly(LEHMER))
    assert reciprocal_lift(g) == parse_poly(LEHMER)


def test_classify():
    c = classify_salem(parse_poly("x^4-x^3-x^2-x+1"))
    assert c.verdict == SALEM and c.salem_root.decimal(5) == "1.72208"
    lehmer = classify_salem(parse_poly(LEHMER))
    assert lehmer.verdict == SALEM and lehmer.salem_root.decimal(6) == "1.176281"
    assert classify_salem(parse_poly("x^2-3x+1")).verdict == QUADRATIC_UNIT
    # Pisot, cyclotomic, reducible
    assert classify_salem(parse_poly("x^3-x-1")).verdict == NOT_SALEM
    assert classify_salem(parse_poly("x^4+x^3+x^2+x+1")).verdict == NOT_SALEM
    sq = parse_poly("x^2-3x+1")
    assert classify_salem(sq * sq).verdict == NOT_SALEM


def test_berkowitz_known():
    A = [[2, 1], [1, -1]]
    assert charpoly(A) == parse_poly("x^2-x-3")
    assert det([[Fraction(1, 2), 3], [1, 4]]) == -1


@given(symmetric())
def test_charpoly_matches_mpmath(A):
    cp = charpoly(A)
    ev = mpmath.eigsy(mpmath.matrix([[float(x) for x in r] for r in A]))[0]
    for lam in ev:
        assert abs(float(cp(Fraction(float(lam))))) < 1e-6 * (1 + max(abs(float(c)) for c in cp.coeffs)) * 10 ** len(A)


@given(symmetric(entries=st.integers(-4, 4).map(Fraction)))
def test_inverse(A):
    if det(A) == 0:
        return
    assert mat_mul(A, inverse(A)) == identity(len(A))


def _reduce(v, H):
    """Greedy reduction of v by an echelon basis; zero iff v lies in the lattice."""
    v = list(v)
    for b in H:
        c = next(j for j, x in enumerate(b) if x)
        if v[c] % b[c]:
            return v
        q = v[c] // b[c]
        v = [x - q * y for x, y in zip(v, b)]
    return v


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_hermite_basis_spans(vectors):
    H = hermite_basis(vectors)
    for v in vectors:
        assert not any(_reduce(v, H))
    # basis vectors are independent: echelon with strictly increasing pivots
    pivots = [next(j for j, x in enumerate(b) if x) for b in H]
    assert pivots == sorted(set(pivots))
