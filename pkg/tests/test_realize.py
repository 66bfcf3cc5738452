from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import fractions, symmetric
from stretchcert.config import PipelineConfig
from stretchcert.errors import PreconditionError, SearchExhausted
from stretchcert.exact.linalg import charpoly, det, identity, mat_mul, transpose
from stretchcert.exact.poly import parse_poly
from stretchcert.exact.roots import isolate_roots
from stretchcert.realize import (RationalSymmetricMatrix, cayley, eigenvector_exact, positivize,
                                 realize_symmetric, rotate_vector)


def _ints(A):
    return [[int(x) for x in r] for r in A]


def test_realize_example_trace_poly():
    r = realize_symmetric(parse_poly("t^2-t-3"))
    assert _ints(r.matrix.entries) == [[2, 1], [1, -1]]
    assert r.e == 0


def test_realize_degree_one():
    r = realize_symmetric(parse_poly("x-3"))
    assert _ints(r.matrix.entries) == [[3]]


def test_realize_deterministic_and_correct():
    g = parse_poly("t^2-10t+8")
    a, b = realize_symmetric(g), realize_symmetric(g)
    assert a == b
    assert a.matrix.charpoly == g
    # the hand-picked realization with an entry of 9 lies outside the default bound
    assert max(abs(x) for r in a.matrix.entries for x in r) <= PipelineConfig().search_bound


def test_realize_cubic():
    g = parse_poly("x^3-3x+1")
    r = realize_symmetric(g)
    assert r.matrix.charpoly == g * parse_poly("x-1") ** r.e


def test_realize_preconditions():
    with pytest.raises(PreconditionError):
        realize_symmetric(parse_poly("x^2+1"))        # not totally real
    with pytest.raises(PreconditionError):
        realize_symmetric(parse_poly("x^2-1"))        # reducible
    with pytest.raises(SearchExhausted):
        realize_symmetric(parse_poly("x^2-40x+1"), e_max=0, search_bound=3)


def test_positivize_example():
    Q = RationalSymmetricMatrix(((2, -1), (-1, -1)))
    theta = isolate_roots(parse_poly("t^2-t-3"))[-1]
    assert not eigenvector_exact(Q, theta).is_positive()
    U, Qp = positivize(Q, theta)
    assert eigenvector_exact(Qp, theta).is_positive()
    assert Qp.charpoly == Q.charpoly
    assert mat_mul(U.entries, transpose(U.entries)) == identity(2)


def test_positivize_rejects_non_eigenvalue():
    Q = RationalSymmetricMatrix(((2, 1), (1, 2)))
    with pytest.raises(PreconditionError):
        positivize(Q, isolate_roots(parse_poly("x^2-5"))[1])


@st.composite
def skew(draw, n):
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            S[i][j] = draw(fractions(4, 4))
            S[j][i] = -S[i][j]
    return tuple(map(tuple, S))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(symmetric(n), skew(n))))
def test_conjugation_invariance(QS):
    Q, S = QS
    U = cayley(S)
    assert mat_mul(U.entries, transpose(U.entries)) == identity(len(Q))
    assert det(U.entries) == 1
    Qp = U.conjugate(RationalSymmetricMatrix(Q))
    assert Qp.charpoly == charpoly(Q)


@given(symmetric(entries=st.integers(-3, 3).map(Fraction)))
def test_positivize_property(Q):
    n = len(Q)
    assume(n >= 2)
    cp = charpoly(Q)
    top = max((r for f, _ in cp.factor() for r in isolate_roots(f)), key=float)
    assume(not top.minpoly.divides(cp.exact_div(top.minpoly)))     # simple eigenvalue
    U, Qp = positivize(Q, top)
    v = eigenvector_exact(Qp, top)
    assert v.is_positive()
    # the rotated eigenvector of Q spans the same line
    w = rotate_vector(U, eigenvector_exact(RationalSymmetricMatrix(Q), top))
    fw, fv = np.array(w.floats()), np.array(v.floats())
    assert abs(abs(fw @ fv) - np.linalg.norm(fw) * np.linalg.norm(fv)) < 1e-8 * np.linalg.norm(fw) * np.linalg.norm(fv)
