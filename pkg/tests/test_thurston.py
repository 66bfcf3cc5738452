from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stretchcert.errors import PreconditionError
from stretchcert.exact.field import NumberField
from stretchcert.exact.linalg import det, mat_mul, transpose
from stretchcert.exact.poly import parse_poly
from stretchcert.exact.roots import isolate_roots
from stretchcert.thurston import (ELLIPTIC, PARABOLIC, PSEUDO_ANOSOV, TwistWeights, classify_word,
                                  parse_word, pf_data, pf_data_from_product, salem_from_2x2,
                                  stretch_from_trace, veech_check, word_rep)

# (5 + sqrt17 + sqrt(38 + 10 sqrt17)) / 2, evaluated independently at 30 digits
EX43_STRETCH = "9.01214424137696512530555310587"


def test_example_product():
    pf = pf_data_from_product([[8, 4], [4, 6]])
    assert pf.nu.minpoly == parse_poly("t^2-14t+32")
    K = NumberField(isolate_roots(parse_poly("x^2-17"))[1])
    assert pf.nu == (7 + K.gen).to_algebraic()
    rep = classify_word("CD", pf)
    assert rep.verdict == PSEUDO_ANOSOV
    assert rep.stretch.minpoly == parse_poly("x^4-10x^3+10x^2-10x+1")
    assert abs(mpmath.mpf(rep.stretch.decimal(20)) - mpmath.mpf(EX43_STRETCH)) < 1e-15
    assert veech_check(rep.stretch)[0]


def test_example_closed_form_is_exact():
    # the closed form lies in Q(sqrt17, sqrt(38 + 10 sqrt17)); check lambda + 1/lambda = nu - 2 instead
    rep = classify_word("CD", pf_data_from_product([[8, 4], [4, 6]]))
    K = NumberField(rep.stretch)
    s = K.gen + K.gen.inverse()
    assert s.minpoly() == parse_poly("x^2-10x+8")     # nu - 2 = 5 + sqrt17


def test_salem_from_2x2_example():
    c = salem_from_2x2([[8, 4], [4, 6]])
    assert c.verdict == "Salem"
    assert c.salem_root.minpoly == parse_poly("x^4-10x^3+10x^2-10x+1")
    with pytest.raises(PreconditionError):
        salem_from_2x2([[1, 2], [3, 1]])


def test_word_verdicts():
    assert classify_word("C", 3).verdict == PARABOLIC
    assert classify_word("CD", 3).verdict == ELLIPTIC
    assert classify_word("CD", 4).verdict == PARABOLIC
    r = classify_word("C^2D", 3)
    assert r.verdict == PSEUDO_ANOSOV and r.trace.rational_value() == -4


def test_parse_word():
    assert parse_word("C D D^-1 C") == [("C", 2)]
    assert parse_word("C^2·D^-3") == [("C", 2), ("D", -3)]
    with pytest.raises(PreconditionError):
        parse_word("CX")
    with pytest.raises(PreconditionError):
        parse_word("CC^-1")


def test_pf_data_matrix_q():
    pf = pf_data([[5, 1], [1, 2]])
    assert pf.product == mat_mul([[5, 1], [1, 2]], [[5, 1], [1, 2]])
    assert pf.ell.is_positive() and pf.h.is_positive()


def test_pf_rejects_reducible():
    with pytest.raises(PreconditionError):
        pf_data_from_product([[1, 0], [0, 2]])
    with pytest.raises(PreconditionError):
        pf_data([[1, -1], [0, 1]])


def test_weights_shape():
    with pytest.raises(PreconditionError):
        pf_data([[1, 2], [2, 1]], TwistWeights((1,), (1, 1)))
    with pytest.raises(PreconditionError):
        TwistWeights((0, 1), (1, 1))


def test_stretch_from_trace_rational():
    lam = stretch_from_trace(isolate_roots(parse_poly("x-3"))[0])
    assert lam.minpoly == parse_poly("x^2-3x+1")


@st.composite
def weighted(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    Q = [[draw(st.integers(0, 3)) for _ in range(m)] for _ in range(n)]
    W = TwistWeights(tuple(draw(st.integers(1, 3)) for _ in range(m)), tuple(draw(st.integers(1, 3)) for _ in range(n)))
    return Q, W


@settings(max_examples=40)
@given(weighted())
def test_affine_conditions_property(QW):
    Q, W = QW
    P = mat_mul([[W.M[i] * x for x in r] for i, r in enumerate(Q)],
                [[W.N[j] * x for x in r] for j, r in enumerate(transpose(Q))])
    try:
        pf = pf_data(Q, W)
    except PreconditionError:
        # only zero rows / columns or reducible products may be rejected
        if any(not any(r) for r in Q) or any(not any(c) for c in zip(*Q)):
            return
        Pn = np.array(P, dtype=float) > 0
        reach = np.linalg.matrix_power(np.eye(len(P)) + Pn, len(P))
        assert not (reach > 0).all()
        return
    # independent float oracle for the PF eigenvalue
    assert float(pf.nu) == pytest.approx(max(np.linalg.eigvals(np.array(P, dtype=float)).real), rel=1e-9)
    K = pf.field
    rows, cols = len(Q), len(Q[0])
    for i in range(cols):
        assert pf.h[i] == W.N[i] * sum((pf.ell[r] * Q[r][i] for r in range(rows)), K.zero)
    for j in range(rows):
        assert pf.ell[j] * K.gen == W.M[j] * sum((pf.h[s] * Q[j][s] for s in range(cols)), K.zero)


@settings(max_examples=40)
@given(st.integers(1, 40), st.integers(1, 40))
def test_cd_trace_is_two_minus_nu(a, b):
    nu = Fraction(a, b)
    r = classify_word("CD", nu)
    assert r.trace.rational_value() == 2 - nu
    R = r.rep
    assert R[0][0] * R[1][1] - R[0][1] * R[1][0] == 1
    if nu > 4:
        assert r.verdict == PSEUDO_ANOSOV
        assert float(r.stretch) + 1 / float(r.stretch) == pytest.approx(float(nu - 2))


@settings(max_examples=30)
@given(st.lists(st.tuples(st.sampled_from("CD"), st.integers(-3, 3).filter(bool)), min_size=1, max_size=5),
       st.integers(5, 30))
def test_word_rep_det_one(word, n):
    assume(parse_word_safe(word))
    K = NumberField(isolate_roots(parse_poly(f"x^2-{n}"))[1])
    R = word_rep(parse_word(word), K)
    assert R[0][0] * R[1][1] - R[0][1] * R[1][0] == K.one


def parse_word_safe(word):
    try:
        parse_word(word)
        return True
    except PreconditionError:
        return False


@settings(max_examples=20)
@given(st.integers(1, 6), st.integers(0, 4), st.integers(1, 6))
def test_veech_on_pf_products(a, b, c):
    S = [[a, b], [b, c]]
    assume(det(S) != 0 and b > 0)
    pf = pf_data(S)
    r = classify_word("CD", pf)
    if r.verdict == PSEUDO_ANOSOV:
        assert veech_check(r.stretch)[0]
