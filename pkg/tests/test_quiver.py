import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbik.quiver import (
    INFINITY,
    Relation,
    WeightedData,
    algebra_basis,
    build_quiver,
    build_relations,
    cartan_matrix,
    parse_point,
    w_vertex,
)


def closed_form_dim(weights):
    s = sum(m - 1 for m in weights)
    return (2 + s) + 2 + 2 * s + sum((m - 1) * (m - 2) // 2 for m in weights)


def test_parse_point_forms():
    assert parse_point("inf") == INFINITY
    assert parse_point("3/2") == (Fraction(3, 2), 1)
    assert parse_point([1, 2, 3, 4]) == (Fraction(1, 2), Fraction(3, 4))
    with pytest.raises(ValueError):
        parse_point({"x": 1})


def test_points_are_projective():
    a = WeightedData.from_points((2, 2), [[2, 1, 4, 1], [1, 1, 0, 1]])
    b = WeightedData.from_points((2, 2), [[1, 1, 2, 1], "inf"])
    assert a == b


@pytest.mark.parametrize(
    "weights,lam,msg",
    [
        ((2, 2), ["inf", "inf"], "distinct"),
        ((2, 1), ["inf", 0], "at least 2"),
        ((3,), ["inf"], "two weights"),
        ((2, 2, 2), ["inf", 0], "one branch point"),
    ],
)
def test_weighted_data_validation(weights, lam, msg):
    with pytest.raises(ValueError, match=msg):
        WeightedData.from_points(weights, lam)


def test_json_roundtrip(tmp_path):
    d = WeightedData.from_points((2, 3, 6), ["inf", 0, "1/3"], N=6)
    path = tmp_path / "d.json"
    path.write_text(json.dumps(d.to_json()), encoding="utf-8")
    assert WeightedData.load(path) == d
    assert d.divides_N()


@pytest.mark.parametrize("weights", [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)])
def test_quiver_shape(weights):
    q = build_quiver(weights)
    assert len(q.vertices) == 2 + sum(m - 1 for m in weights)
    assert len(q.arrows) == 2 + sum(m - 1 for m in weights)
    assert not q.has_oriented_cycle()
    # every arrow goes forward in the vertex order
    assert all(q.index[a.source] < q.index[a.target] for a in q.arrows)


def test_relation_at_infinity_kills_x0():
    (rel,) = build_relations(WeightedData.from_points((2, 2), ["inf", 0]))[:1]
    assert rel.terms == [(Fraction(1), ("x0", "e1"))]
    with pytest.raises(ValueError):
        Relation(1, Fraction(0), Fraction(0))


def test_generic_dimension_16():
    alg = algebra_basis(WeightedData.from_points((2, 2, 2, 2), ["inf", 0, 1, 2]))
    assert alg.dimension == 16


@pytest.mark.parametrize("weights", [(2, 2), (2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6), (5, 2, 3)])
def test_dimension_closed_form(weights):
    pts = ["inf", 0, 1, 2, 3][: len(weights)]
    assert algebra_basis(WeightedData.from_points(weights, pts)).dimension == closed_form_dim(weights)


def test_cartan_entries():
    d = WeightedData.from_points((2, 3, 6), ["inf", 0, 1])
    c = cartan_matrix(d)
    alg = algebra_basis(d)
    idx = {v: k for k, v in enumerate(alg.vertices)}
    assert c[idx["u"]][idx["v"]] == 2
    for i, m in enumerate(d.weights, start=1):
        for j in range(1, m):
            assert c[idx["u"]][idx[w_vertex(i, j)]] == 1
            assert c[idx["v"]][idx[w_vertex(i, j)]] == 1
    n = len(c)
    assert all(c[k][k] == 1 for k in range(n))
    assert all(c[a][b] == 0 for a in range(n) for b in range(a))


def test_reduce_applies_relation():
    d = WeightedData.from_points((2, 2), ["1/2", 3])
    alg = algebra_basis(d)
    t = alg.quiver.arrow["e1"].target
    # (1/2 x0 + x1) e1 = 0, so x0 e1 = -2 x1 e1 in the quotient
    v0 = alg.reduce("u", t, {("x0", "e1"): 1})
    v1 = alg.reduce("u", t, {("x1", "e1"): 1})
    assert alg.basis[("u", t)] == [("x1", "e1")]
    assert v1 == [1]
    assert v0 == [-2]


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(2, 4), min_size=2, max_size=4),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=4, max_size=4, unique=True),
)
def test_dimension_independent_of_distinct_points(weights, pts):
    d = WeightedData.from_points(weights, pts[: len(weights)])
    assert algebra_basis(d).dimension == closed_form_dim(weights)
