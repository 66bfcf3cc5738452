from math import isqrt

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv

from stretchcert.config import PipelineConfig
from stretchcert.errors import PreconditionError
from stretchcert.exact.poly import parse_poly
from stretchcert.unitfinder import (TotallyRealField, UnitSystem, find_alpha, fundamental_unit_quadratic,
                                    iv_bounds, log_embedding, quadratic_units, theoremB_pipeline)

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 31, 33, 43, 46, 53, 61]


def _pell_oracle(d):
    """Smallest unit > 1 of the maximal order by direct search over b."""
    four = d % 4 == 1
    for b in range(1, 100000):
        for sign in (-1, 1):
            t = d * b * b + sign * (4 if four else 1)
            a = isqrt(t) if t >= 0 else -1
            if a > 0 and a * a == t:
                if four:
                    return (a, b, 2)
                return (a, b, 1)
    raise AssertionError


@pytest.mark.parametrize("d", SQUAREFREE)
def test_fundamental_unit_against_pell(d):
    eps = fundamental_unit_quadratic(d)
    a, b, den = _pell_oracle(d)
    # eps = (a + b sqrt d) / den, coordinates in the basis 1, sqrt d
    assert eps.poly[0] * den == a and eps.poly[1] * den == b


def test_fundamental_unit_preconditions():
    with pytest.raises(PreconditionError):
        fundamental_unit_quadratic(12)
    with pytest.raises(PreconditionError):
        fundamental_unit_quadratic(1)


def test_totally_real_field_checks():
    with pytest.raises(PreconditionError):
        TotallyRealField("x^3-2")
    with pytest.raises(PreconditionError):
        TotallyRealField("x^2-4")
    K = TotallyRealField("x^3-3x+1")
    assert [float(r) for r in K.embeddings] == sorted([float(r) for r in K.embeddings], reverse=True)


def test_quadratic_units_non_monogenic_presentation():
    # x^2 - 12 generates Q(sqrt 3); the unit 2 + sqrt3 = 2 + theta/2
    K = TotallyRealField("x^2-12")
    U = quadratic_units(K)
    assert U.units[0].minpoly() == parse_poly("x^2-4x+1")


def test_alpha_sqrt5():
    K = TotallyRealField("x^2-5")
    g = find_alpha(K, quadratic_units(K))
    assert g.alpha.minpoly() == parse_poly("x^2-3x+1")
    assert g.conjugate_values[0].decimal(6) == "2.618034"


def test_alpha_sqrt2():
    K = TotallyRealField("x^2-2")
    g = find_alpha(K, quadratic_units(K))
    assert g.alpha.minpoly() == parse_poly("x^2-6x+1")


def test_alpha_cubic():
    K = TotallyRealField("x^3-3x+1")
    U = UnitSystem.build(K, ["x", "x-1"])
    g = find_alpha(K, U)
    c = g.conjugate_values
    assert c[0] > 1 and all(0 < x < 1 for x in c[1:])
    assert len(set(float(x) for x in c)) == 3
    assert g.alpha.minpoly().degree == 3


def test_dependent_units_rejected():
    K = TotallyRealField("x^3-3x+1")
    with pytest.raises(PreconditionError):
        UnitSystem.build(K, ["x", "x^2"])
    with pytest.raises(PreconditionError):
        UnitSystem.build(K, ["x+1", "x"])            # x + 1 has norm -3


def test_log_embedding_values():
    K = TotallyRealField("x^2-5")
    v = log_embedding(K.element("1/2+1/2*x"), K)
    lo, hi = iv_bounds(v[0])
    ref = mpmath.log((1 + mpmath.sqrt(5)) / 2)
    assert lo <= ref <= hi and hi - lo < 1e-15


@settings(max_examples=30)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_log_sum_zero_property(a, b):
    K = TotallyRealField("x^3-3x+1")
    U = UnitSystem.build(K, ["x", "x-1"])
    u = U.units[0] ** a * U.units[1] ** b
    s = sum(log_embedding(u, K), iv.mpf(0))
    assert 0 in s


def test_pipeline_rational():
    rep = theoremB_pipeline("x-1")
    doc = rep.to_json()
    assert rep.field_equal and doc["Q"] == [["3"]]
    assert doc["thurston"]["stretch"]["minpoly"] == "x^2-7x+1"


def test_pipeline_sqrt3():
    rep = theoremB_pipeline("x^2-3", config=PipelineConfig())
    assert rep.field_equal
    assert rep.doc["veech"]["passed"]
