import itertools
import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stretchcert.errors import PreconditionError
from stretchcert.exact.linalg import det
from stretchcert.surface import (RoutingPlan, analyze, build_surface, expected_genus,
                                 genus_formula_check)


def test_torus():
    r = analyze(build_surface([[1]]))
    assert (r.V, r.E, r.F, r.genus) == (1, 2, 1, 1)
    assert r.orientable and r.tight and r.filling


def test_two_by_two_report():
    r = analyze(build_surface([[2, 1], [1, 2]]))
    assert r.intersection == ((2, 1), (1, 2))
    assert r.euler == -2 and r.genus == 2
    assert sum(r.vertex_degrees) == 4 * 6


def test_genus_formula_small():
    assert genus_formula_check([[2]])
    assert genus_formula_check([[2, 3], [3, 2]])
    assert genus_formula_check([[2, 2, 3], [2, 4, 2], [3, 2, 2]])
    assert [expected_genus(n) for n in (1, 2, 3, 4)] == [1, 3, 7, 13]
    with pytest.raises(PreconditionError):
        genus_formula_check([[1, 2], [2, 3]])


def test_singular_rejected():
    with pytest.raises(PreconditionError):
        build_surface([[2, 2], [2, 2]])
    with pytest.raises(PreconditionError):
        build_surface([[1, 2, 1]])


def test_twisted_plan_is_non_orientable():
    Q = [[2, 1], [1, 2]]
    P = RoutingPlan.canonical(Q)
    tw = tuple(tuple(t == 0 for t in range(len(x))) for x in P.routes)
    r = analyze(build_surface(Q, RoutingPlan(P.strips, P.routes, twists=tw)))
    assert not r.orientable and r.genus is None and not r.tight


def test_reversed_crossing_is_not_tight():
    Q = [[2, 1], [1, 2]]
    P = RoutingPlan.canonical(Q)
    dr = tuple(tuple(-1 if (i == 0 and t == 1) else 1 for t in range(len(x))) for i, x in enumerate(P.routes))
    r = analyze(build_surface(Q, RoutingPlan(P.strips, P.routes, directions=dr)))
    assert r.orientable and r.intersection == ((2, 1), (1, 2)) and not r.tight


def test_bad_plans_rejected():
    Q = [[2, 1], [1, 2]]
    P = RoutingPlan.canonical(Q)
    with pytest.raises(PreconditionError):
        build_surface(Q, RoutingPlan(P.strips[:1], P.routes))
    with pytest.raises(PreconditionError):
        build_surface(Q, RoutingPlan(((0, 0, 0), (0, 1, 1)), P.routes))
    with pytest.raises(PreconditionError):
        build_surface([[0, 1], [1, 0]])          # zero entry: curves would be disjoint
    with pytest.raises(PreconditionError):
        RoutingPlan.from_json({"strips": [[0]]})


def test_plan_json_roundtrip():
    P = RoutingPlan.canonical([[2, 1], [1, 3]])
    assert RoutingPlan.from_json(json.loads(json.dumps(P.to_json()))) == P


def test_exhaustive_2x2():
    for a, b, c, d in itertools.product(range(1, 5), repeat=4):
        Q = [[a, b], [c, d]]
        if a * d - b * c == 0:
            continue
        r = analyze(build_surface(Q))
        assert r.intersection == ((a, b), (c, d))
        assert r.euler % 2 == 0 and r.orientable


@st.composite
def positive_matrix(draw, lo=1):
    n = draw(st.integers(1, 3))
    Q = [[draw(st.integers(lo, 4)) for _ in range(n)] for _ in range(n)]
    assume(det(Q) != 0)
    return Q


@settings(max_examples=60)
@given(positive_matrix())
def test_roundtrip_property(Q):
    S = build_surface(Q)
    r = analyze(S)
    assert [list(x) for x in r.intersection] == Q
    assert r.euler % 2 == 0 and r.orientable and r.connected and r.filling and r.tight
    assert r.V == sum(map(sum, Q)) and r.E == 2 * r.V
    assert sum(r.vertex_degrees) == 4 * r.V


@settings(max_examples=25)
@given(positive_matrix(lo=2))
def test_genus_formula_property(Q):
    assert genus_formula_check(Q)
