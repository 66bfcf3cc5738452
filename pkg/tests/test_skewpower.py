import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import symmetric
from stretchcert.errors import PreconditionError
from stretchcert.exact.linalg import charpoly, is_integral, mat_mul
from stretchcert.exact.poly import parse_poly, reciprocal_lift
from stretchcert.exact.roots import isolate_roots
from stretchcert.exact.salem import dickson
from stretchcert.formats import dumps
from stretchcert.realize import RationalSymmetricMatrix
from stretchcert.skewpower import (BlockCompanion, build_block, chart_value, integral_power_exponent,
                                   integrality_exponent, matrix_order_mod, positivity_exponent, q_sequence,
                                   qq_fast, salem_certificate, skew_profile, verify_certificate_json,
                                   verify_skew)

EXAMPLE = "x^4-x^3-x^2-x+1"
LEHMER = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"
THETA = isolate_roots(parse_poly("t^2-t-3"))[-1]


def _ints(A):
    return [[int(x) for x in r] for r in A]


def test_q_sequence_example():
    Q = [[2, 1], [1, -1]]
    assert _ints(q_sequence(Q, 2)[1]) == [[3, 1], [1, 0]]
    assert _ints(q_sequence(Q, 3)[1]) == [[5, 1], [1, 2]]
    for k in range(1, 20):
        assert qq_fast(Q, k) == q_sequence(Q, k)[1]


def test_positivity_floors():
    Q = [[2, 1], [1, -1]]
    r1 = positivity_exponent(Q, THETA, entry_floor=1)
    r2 = positivity_exponent(Q, THETA, entry_floor=2)
    assert (r1.k, _ints(r1.QQk)) == (3, [[5, 1], [1, 2]])
    assert (r2.k, _ints(r2.QQk)) == (5, [[14, 4], [4, 2]])
    assert r1.k <= r1.k_bound and r2.k <= r2.k_bound


def test_positivity_needs_positive_eigenvector():
    with pytest.raises(PreconditionError):
        positivity_exponent([[2, -1], [-1, -1]], THETA)


def test_block_identities():
    B = build_block([[2, 1], [1, -1]], salem_poly=parse_poly(EXAMPLE))
    assert B.charpoly == parse_poly(EXAMPLE)
    assert B.det() == 1


def test_chart_values():
    for k in range(0, 13):
        assert chart_value(k) == dickson(k)(1)


def _brute_k0(M, cap=2000):
    P, k = M, 1
    while not is_integral(P):
        P, k = mat_mul(P, M), k + 1
        assert k <= cap
    return k


def test_integrality_rotation_example():
    Q = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(4, 5), Fraction(-3, 5)]]
    B = build_block(Q)
    ic = integrality_exponent(B)
    assert ic.k0 == 6 == _brute_k0(B.entries)
    assert ic.order % ic.k0 == 0
    assert mat_mul(B.entries, ic.basis) == mat_mul(ic.basis, ic.omega)


def test_integrality_rejects_bad_charpoly():
    with pytest.raises(PreconditionError):
        integral_power_exponent([[Fraction(1, 2), 0], [0, 2]])


def test_matrix_order_mod_small():
    # [[0,-1],[1,1]] has order 6 over the integers, hence modulo every N >= 3
    for N in (3, 4, 5, 7, 12):
        assert matrix_order_mod(((0, -1), (1, 1)), N) == 6
    assert matrix_order_mod(((1, 1), (0, 1)), 7) == 7


def test_certificate_example():
    c = salem_certificate(parse_poly(EXAMPLE))
    assert c.trace_poly == parse_poly("t^2-t-3")
    assert _ints(c.base.entries) == [[2, 1], [1, -1]]
    assert c.integrality.k0 == 1 and c.k == 3
    assert _ints(c.Qk) == [[5, 1], [1, 2]]
    assert c.eigenvalue.minpoly == parse_poly("x^2-7x+9")
    assert all(ok for _, ok in verify_certificate_json(c.to_json()))
    c2 = salem_certificate(parse_poly(EXAMPLE), entry_floor=2)
    assert c2.k == 5 and _ints(c2.Qk) == [[14, 4], [4, 2]]


def test_certificate_lehmer():
    c = salem_certificate(parse_poly(LEHMER))
    assert c.Q.n == 5 and c.e == 0
    assert min(c.Qk[i][j] for i in range(5) for j in range(5)) >= 1
    assert all(ok for _, ok in verify_certificate_json(c.to_json()))


def test_certificate_quadratic_unit():
    c = salem_certificate(parse_poly("x^2-3x+1"))
    assert c.verdict == "QuadraticReciprocalUnit"
    assert all(ok for _, ok in verify_certificate_json(c.to_json()))


def test_tampered_certificate_fails():
    doc = json.loads(dumps(salem_certificate(parse_poly(EXAMPLE)).to_json()))
    doc["Qk"][0][0] = "6"
    checks = dict(verify_certificate_json(doc))
    assert not checks["Qk by recursion"]
    doc = json.loads(dumps(salem_certificate(parse_poly(EXAMPLE)).to_json()))
    doc["k"] = 5
    assert not all(ok for _, ok in verify_certificate_json(doc))


def test_not_salem_rejected():
    with pytest.raises(PreconditionError):
        salem_certificate(parse_poly("x^3-x-1"))


@settings(max_examples=40)
@given(symmetric(), st.integers(1, 8))
def test_skew_property(Q, k):
    assert verify_skew(Q, k)


@settings(max_examples=40)
@given(symmetric())
def test_block_charpoly_is_lift(Q):
    B = BlockCompanion(RationalSymmetricMatrix(Q))
    assert B.det() == 1
    assert B.charpoly == reciprocal_lift(charpoly(Q))


@settings(max_examples=40)
@given(symmetric(entries=st.integers(-3, 3).map(Fraction)), st.integers(1, 7))
def test_chebyshev_spectral_mapping(Q, k):
    # eigenvalues of QQ_k are V_k(eigenvalues of Q)
    ev = np.linalg.eigvalsh(np.array(Q, dtype=float))
    Vk = dickson(k)
    want = sorted(float(Vk(Fraction(float(x)))) for x in ev)
    got = sorted(np.linalg.eigvalsh(np.array(qq_fast(Q, k), dtype=float)))
    scale = 1 + max(abs(x) for x in want)
    assert np.allclose(got, want, atol=1e-7 * scale)


def test_skew_profile_matches_direct():
    rng = random.Random(3)
    for _ in range(5):
        n = rng.randint(1, 3)
        Q = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                Q[i][j] = Q[j][i] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        assert skew_profile(Q, 6) == [verify_skew(Q, k) for k in range(1, 7)] == [True] * 6
