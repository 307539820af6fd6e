import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbik import kzero, reps, tilting
from orbik.quiver import WeightedData, w_vertex
from orbik.tilting import F, T, Theta, WallError

CASES = (2, 3, 4, 6)


@pytest.mark.parametrize("text,n", [("4/5", 1), ("-1/3", 0), ("sqrt(2)", 1), ("2", 2), ("-2", 0), ("3+sqrt(2)", 3), ("1-2*sqrt(3)", -1)])
def test_canonical_n(text, n):
    assert tilting.canonical_n(text) == n


def test_theta_parse_forms():
    assert Theta.parse("7/3") == Theta(Fraction(7, 3))
    assert Theta.parse("-sqrt(5)") == Theta(0, -1, 5)
    assert Theta.parse("1/2+3/4*sqrt(7)") == Theta(Fraction(1, 2), Fraction(3, 4), 7)
    assert Theta.parse("2*sqrt(9)") == Theta(6)
    with pytest.raises(ValueError):
        Theta.parse("sqrt(x)")
    with pytest.raises(ValueError):
        Theta(0, 1, 8)


@settings(max_examples=200, deadline=None)
@given(
    st.fractions(min_value=-20, max_value=20, max_denominator=30),
    st.fractions(min_value=-5, max_value=5, max_denominator=30).filter(lambda b: b != 0),
    st.sampled_from([2, 3, 5, 6, 7, 10, 13]),
    st.fractions(min_value=-50, max_value=50, max_denominator=30),
    st.integers(-5, 5),
)
def test_surd_sign_agrees_with_floats(a, b, d, x, y):
    th = Theta(a, b, d)
    value = float(x) - y * float(th)
    s = th.sign_of(x, y)
    if abs(value) > 1e-9:
        assert s == (1 if value > 0 else -1)
    # theta / 2 is irrational, so the float floor is reliable away from integers
    if abs(float(th) / 2 - round(float(th) / 2)) > 1e-9:
        assert th.floor_half() == math.floor(float(th) / 2)


def test_classify_examples():
    d = kzero.case_data(2)
    alg = kzero.algebra(d)
    assert tilting.classify_class(d, "4/5", reps.simple(alg, "u").dims) == F
    for i in range(1, 5):
        assert tilting.classify_class(d, "4/5", reps.simple(alg, w_vertex(i, 1)).dims) == T
    with pytest.raises(ValueError):
        tilting.classify_class(d, "4/5", [0] * 6)


def test_wall_collision():
    d = WeightedData.from_points((2, 2, 2, 2), ["inf", 0, 1, -1], N=1)
    with pytest.raises(WallError) as err:
        tilting.classify_class(d, "1", [1, 0, 0, 0, 0, 0])
    assert err.value.deg == 1 and err.value.rk == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=10, max_size=10).filter(any), st.integers(1, 6))
def test_classification_scale_invariant(dims, k):
    d = kzero.case_data(6)
    th = Theta(0, 1, 2)
    assert tilting.classify_class(d, th, dims) == tilting.classify_class(d, th, [k * x for x in dims])


def test_surd_theta_never_hits_wall_on_corpus():
    d = kzero.case_data(4)
    alg = kzero.algebra(d)
    rng = random.Random(8)
    th = Theta.parse("1+sqrt(3)")
    for _ in range(40):
        m = reps.random_module(alg, 2, rng)
        for part in tilting.classify_module(m, th, d, rng):
            assert part.side in (T, F, tilting.UNKNOWN)


def test_classify_module_examples():
    d = kzero.case_data(2)
    alg = kzero.algebra(d)
    su, sw = reps.simple(alg, "u"), reps.simple(alg, w_vertex(1, 1))
    parts = tilting.classify_module(reps.direct_sum(su, sw), "4/5")
    assert sorted((p.module.dims, p.side) for p in parts) == sorted([(su.dims, F), (sw.dims, T)])
    assert tilting.classify_module(reps.zero_module(alg), "4/5") == []
    assert [p.side for p in tilting.classify_module(su, "4/5")] == [F]


def test_heart_object():
    d = kzero.case_data(3)
    alg = kzero.algebra(d)
    m = reps.direct_sum(reps.simple(alg, "u"), reps.simple(alg, w_vertex(2, 1)), reps.projective(alg, "v"))
    h = tilting.HeartObject.from_module(m, "4/5")
    assert h.f_part.total_dim + h.t_part.total_dim == m.total_dim
    assert h.is_valid("4/5")
    swapped = tilting.HeartObject(h.t_part, h.f_part)
    assert not swapped.is_valid("4/5")


@pytest.mark.parametrize("m", CASES)
@pytest.mark.parametrize("theta", ["4/5", "13/7", "-3/2", "sqrt(2)"])
def test_torsion_pair(m, theta):
    rep = tilting.verify_torsion_pair(kzero.case_data(m), theta, 100, 5, dim_bound=2)
    assert rep.ok, [c.to_json() for c in rep.failures()]


def test_flipped_sides_violate_torsion_pair():
    # falsifiability: the check must notice a wrong sign convention
    failed = [not tilting.verify_torsion_pair(kzero.case_data(m), "4/5", 60, 3, dim_bound=2, flip=True).ok for m in CASES]
    assert all(failed)


def test_corpus_of_simples_passes():
    d = kzero.case_data(4)
    alg = kzero.algebra(d)
    corpus = [reps.simple(alg, v) for v in alg.vertices]
    assert tilting.verify_torsion_pair(d, "4/5", 0, 0, corpus=corpus).ok


def test_quadruple_slots():
    d = kzero.case_data(4)
    n = 1
    assert tilting.quadruple_slot(d, n, kzero.pullback_class(d, n, n)) == tilting.SLOT_GE
    assert tilting.quadruple_slot(d, n, kzero.pullback_class(d, n, n + 5)) == tilting.SLOT_GE
    assert tilting.quadruple_slot(d, n, kzero.pullback_class(d, n, n - 1)) == tilting.SLOT_LE
    assert tilting.quadruple_slot(d, n, kzero.character_class(d, n, 2, 1)) == tilting.SLOT_T1
    assert tilting.quadruple_slot(d, n, kzero.character_class(d, n, 3, 3)) == tilting.SLOT_T1
    assert tilting.quadruple_slot(d, n, kzero.structure_class(d, n, 2, 2)) == tilting.SLOT_T0
    mixed = kzero.pullback_class(d, n, n) + kzero.structure_class(d, n, 1, 1)
    assert tilting.quadruple_slot(d, n, mixed) == tilting.UNDECIDABLE
    zero = kzero.structure_class(d, n, 1, 0)
    assert tilting.quadruple_slot(d, n, zero) == tilting.UNDECIDABLE
