"""Acceptance criteria 1-13, one recorded line per criterion.

Run with ``pytest tests/test_acceptance.py`` (or as a script); the terminal
summary lists PASS/FAIL per criterion. Reference values below come from
closed forms that do not share code with the library.
"""

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from orbik import kzero, lattice, linalg, reps, tilting
from orbik.quiver import WeightedData

CASES = (2, 3, 4, 6)
MULTIPLICITIES = {2: (2, 2, 2, 2), 3: (3, 3, 3), 4: (2, 4, 4), 6: (2, 3, 6)}
RANKS = {2: 6, 3: 8, 4: 9, 6: 10}
PUBLISHED = {3: ((-1, 1), (-1, 0)), 4: ((0, 1), (-1, 0)), 6: ((-1, 1), (1, 0))}
THETA = Fraction(4, 5)
SEED = 20240917


def test_c01_ramification(criterion):
    t0 = time.perf_counter()
    got = {m: lattice.derive_ramification(lattice.orbifold_case(m)).multiplicities for m in CASES}
    elapsed = time.perf_counter() - t0
    ok = got == MULTIPLICITIES and elapsed < 1.0
    criterion(1, "ramification multiplicities (2,2,2,2) (3,3,3) (2,4,4) (2,3,6) in < 1 s", ok)
    assert got == MULTIPLICITIES
    assert elapsed < 1.0


def test_c02_k0_ranks(criterion):
    ranks = {}
    for m in CASES:
        data = kzero.case_data(m)
        e = kzero.euler_matrix(data)
        # the Euler form is unimodular, so its size is the rank of K_0
        det = linalg.matrix(e).det()
        assert abs(det) == 1
        ranks[m] = len(e)
    criterion(2, "K0 ranks 6, 8, 9, 10", ranks == RANKS)
    assert ranks == RANKS


def test_c03_riemann_hurwitz(criterion):
    sums = {m: sum(1 - Fraction(1, k) for k in MULTIPLICITIES[m]) for m in CASES}
    derived = {m: lattice.derive_ramification(lattice.orbifold_case(m)).hurwitz_sum() for m in CASES}
    ok = all(derived[m] == 2 == sums[m] for m in CASES)
    criterion(3, "sum(1 - 1/m_i) = 2 exactly", ok)
    assert ok


def test_c04_fixed_points(criterion):
    ok = True
    for m in CASES:
        case = lattice.orbifold_case(m)
        for k in range(1, m):
            # det(M - I) = det M - tr M + 1 = 2 - 2 cos(2 pi k / m)
            expected = round(2 - 2 * math.cos(2 * math.pi * k / m))
            ok &= len(lattice.fixed_points(case, k)) == expected
    criterion(4, "fixed-point counts equal |det(M_g - I)|", ok)
    assert ok


def test_c05_cocycles(criterion):
    t0 = time.perf_counter()
    results = []
    for m in CASES:
        case = lattice.orbifold_case(m)
        results.append(lattice.verify_cocycle(lattice.base_cocycle(case.tau), 3))
        avg = lattice.averaged_cocycle(case)
        results.append(lattice.verify_cocycle(avg, 3))
        results.append(lattice.verify_invariance(case, avg, 3))
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in results) and all(r.checked > 0 for r in results) and elapsed < 5.0
    criterion(5, "cocycle identity and G-invariance on [-3,3]^2 in < 5 s", ok)
    assert ok, [r.to_json() for r in results if not r.ok]


@pytest.mark.parametrize(
    "m",
    [
        3,
        4,
        pytest.param(
            6,
            marks=pytest.mark.xfail(
                strict=True,
                reason="the published m=6 matrix has determinant -1; see decisions ledger",
            ),
        ),
    ],
)
def test_c06_group_generators(m, criterion):
    case = lattice.orbifold_case(m)
    ours = lattice.published_generator(case)
    ok = ours == PUBLISHED[m]
    criterion(6, "group generators match published matrices (m = 3, 4, 6)", ok)
    assert ok, (ours, PUBLISHED[m])


def test_c07_gram_unitriangular(criterion):
    ok = True
    for m in CASES:
        g = kzero.gram_matrix(kzero.case_data(m))
        k = len(g)
        ok &= all(g[i][i] == 1 for i in range(k))
        ok &= all(g[i][j] == 0 for i in range(k) for j in range(i))
    criterion(7, "Gram matrices unitriangular with unit diagonal", ok)
    assert ok


def test_c08_euler_oracle(criterion):
    t0 = time.perf_counter()
    mismatches = []
    pairs = 0
    for m in CASES:
        data = kzero.case_data(m)
        alg = kzero.algebra(data)
        simples = [reps.simple(alg, v) for v in alg.vertices]
        for a in simples:
            for b in simples:
                if kzero.euler_form(data, a.dims, b.dims) != reps.euler_characteristic(a, b):
                    mismatches.append((m, a.dims, b.dims))
        rng = random.Random(SEED + m)
        for _ in range(50):
            x = reps.random_module(alg, 3, rng)
            y = reps.random_module(alg, 3, rng)
            assert reps.check_relations(x) and reps.check_relations(y)
            pairs += 1
            if kzero.euler_form(data, x.dims, y.dims) != reps.euler_characteristic(x, y):
                mismatches.append((m, x.dims, y.dims))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and pairs == 200 and elapsed < 60.0
    criterion(8, "x^T(I-A+R)y = sum (-1)^i dim Ext^i on simples and 50 random pairs per case in < 60 s", ok)
    assert not mismatches, mismatches[:5]
    assert elapsed < 60.0


def test_c09_deg_rk_transport(criterion):
    ns = sorted({0, 1, tilting.canonical_n(THETA)})
    ok = True
    for m in CASES:
        data = kzero.case_data(m)
        for n in ns:
            for c in kzero.curve_basis(data):
                ok &= kzero.deg_rk(data, n, kzero.transport(data, n, c)) == kzero.curve_class_deg_rk(data, n, c)
    criterion(9, "deg_n and rk preserved by transport on every basis class, n in {0, 1, canonical_n(4/5)}", ok)
    assert ok


def test_c10_mutation_chain_and_dual_basis(criterion):
    ok = True
    for m in CASES:
        data = kzero.case_data(m)
        for n in (0, 1):
            for i in range(1, data.r + 1):
                ok &= kzero.mutation_chain(data, n, i).ok
            basis = kzero.curve_basis(data)
            dual = kzero.dual_basis(data, n)
            k = len(basis)
            pairing = [[kzero.curve_pairing(data, e, f) for f in dual] for e in basis]
            ok &= pairing == [[int(a == b) for b in range(k)] for a in range(k)]
    criterion(10, "mutation chain turns exc-col2 into exc-col1; dual pairing is the identity", ok)
    assert ok


def test_c11_algebra_dimension(criterion):
    # several generic rational choices of four distinct branch points
    dims = set()
    for pts in (["inf", 0, 1, 2], ["inf", 1, 0, -1], [3, "1/2", -7, "inf"], ["2/3", 5, -1, 0]):
        dims.add(kzero.algebra(WeightedData.from_points((2, 2, 2, 2), pts)).dimension)
    ok = dims == {16}
    criterion(11, "dim = 16 for weights (2,2,2,2), generic lambda", ok)
    assert ok, dims


def test_c12_torsion_pair(criterion):
    t0 = time.perf_counter()
    reports = {m: tilting.verify_torsion_pair(kzero.case_data(m), THETA, 100, SEED) for m in CASES}
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports.values()) and elapsed < 120.0
    for r in reports.values():
        counts = next(c for c in r.checks if c.name == "summands T/F").lhs
        assert counts[0] > 0 and counts[1] > 0
    criterion(12, "Hom(T, F) = 0 on 100 seeded modules per case at theta = 4/5 in < 120 s", ok)
    assert ok, {m: [c.to_json() for c in r.failures()] for m, r in reports.items()}


def test_c13_numeric_branch_points(criterion):
    t0 = time.perf_counter()
    _, e1, e2, e3 = lattice.branch_points_numeric(lattice.orbifold_case(2), tol=1e-12)
    elapsed = time.perf_counter() - t0
    lemniscatic = math.gamma(0.25) ** 4 / (8 * math.pi)
    ok = abs(e1 + e2 + e3) < 1e-8 and abs(e2) < 1e-8 and elapsed < 1.0
    ok &= abs(e1 - lemniscatic) < 1e-8
    criterion(13, "e1 + e2 + e3 = 0 and e2 = 0 at tau = i to 1e-8, q-series < 1 s", ok)
    assert ok, (e1, e2, e3, elapsed)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
