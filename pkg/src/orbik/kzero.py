"""Grothendieck groups, Euler forms and the degree/rank transport.

Two lattices of the same rank appear here. Dimension vectors of right
modules over the bound path algebra live in the vertex basis. Classes on
the equivariant curve live in the basis of the exceptional collection
``(O(n), O(n+1), O_{(m_1-1)D_1}, ..., O_{D_1}, ...)``, written ``O(k)`` for
the pullback of ``O_{P^1}(k)``. Both bases are indexed by the vertices in
the same order, which makes the Gram matrix of the collection the Cartan
matrix ``C[a][b]`` = #(paths a -> b modulo relations).

Conventions frozen here:

* modules are right modules, so an arrow ``s -> t`` of the quiver gives a
  linear map ``M_t -> M_s``;
* the Euler form of modules is ``x^T E y`` with ``E = I - A + R``, where
  ``A[a][b]`` counts the module maps ``M_a -> M_b`` (quiver arrows b -> a)
  and ``R[a][b]`` the relations running from b to a. This makes ``E`` the
  inverse transpose of the Cartan matrix;
* the transport sends a curve class ``c`` to ``(chi(E_a, c))_a = C c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .quiver import PathAlgebra, WeightedData, algebra_basis, w_vertex
from .report import Report

__all__ = [
    "DimVector",
    "CurveClass",
    "algebra",
    "simple_vector",
    "euler_matrix",
    "euler_form",
    "gram_matrix",
    "deg_rk",
    "pullback_class",
    "structure_class",
    "character_class",
    "curve_basis",
    "curve_basis_labels",
    "curve_class_deg_rk",
    "curve_pairing",
    "transport",
    "verify_deg_rk_transport",
    "dual_basis",
    "published_dual_basis",
    "verify_dual_basis",
    "left_mutation",
    "right_mutation",
    "mutate_step",
    "exc_col1",
    "exc_col2",
    "mutation_chain",
    "k0_rank",
    "case_data",
    "M2_SURROGATE",
    "inverse_unimodular",
]


@lru_cache(maxsize=64)
def algebra(data: WeightedData) -> PathAlgebra:
    return algebra_basis(data)


@dataclass(frozen=True)
class DimVector:
    """Integer vector indexed by the quiver vertices."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __add__(self, other: "DimVector") -> "DimVector":
        _same_size(self, other)
        return DimVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "DimVector") -> "DimVector":
        _same_size(self, other)
        return DimVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "DimVector":
        return DimVector(tuple(-a for a in self))

    def __rmul__(self, k: int) -> "DimVector":
        return DimVector(tuple(k * a for a in self))

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_json(self) -> list[int]:
        return list(self.values)


def _same_size(x, y):
    if len(x) != len(y):
        raise ValueError(f"size mismatch: {len(x)} vs {len(y)}")


def simple_vector(data: WeightedData, vertex: str) -> DimVector:
    vs = algebra(data).vertices
    return DimVector(tuple(int(v == vertex) for v in vs))


def _pairs_matrix(data: WeightedData) -> tuple[list[list[int]], list[list[int]]]:
    alg = algebra(data)
    idx = {v: k for k, v in enumerate(alg.vertices)}
    n = len(idx)
    a = [[0] * n for _ in range(n)]
    r = [[0] * n for _ in range(n)]
    for arr in alg.quiver.arrows:
        a[idx[arr.target]][idx[arr.source]] += 1
    for rho in alg.relations:
        r[idx[rho.target(alg.quiver)]][idx[rho.source(alg.quiver)]] += 1
    return a, r


def euler_matrix(data: WeightedData) -> list[list[int]]:
    """``E = I - A + R`` in the right-module orientation."""
    a, r = _pairs_matrix(data)
    n = len(a)
    return [[int(i == j) - a[i][j] + r[i][j] for j in range(n)] for i in range(n)]


def euler_form(data: WeightedData, x: Sequence[int], y: Sequence[int]) -> int:
    e = euler_matrix(data)
    n = len(e)
    if len(x) != n or len(y) != n:
        raise ValueError(f"vectors must have length {n}")
    return sum(x[i] * e[i][j] * y[j] for i in range(n) for j in range(n) if e[i][j])


def _is_upper_unitriangular(m) -> bool:
    n = len(m)
    return all(m[i][i] == 1 for i in range(n)) and all(m[i][j] == 0 for i in range(n) for j in range(i))


def gram_matrix(data: WeightedData, n: int = 0) -> list[list[int]]:
    """Gram matrix ``chi(E_a, E_b)`` of the exceptional collection behind ``V_n``.

    The collection is strong, so the Gram matrix is the Cartan matrix; it
    does not depend on ``n``. Raises if it is not upper unitriangular.
    """
    alg = algebra(data)
    vs = alg.vertices
    g = [[alg.dim(a, b) for b in vs] for a in vs]
    if not _is_upper_unitriangular(g):
        raise AssertionError("Gram matrix is not unitriangular: vertex/Hom convention is broken")
    return g


def inverse_unimodular(m: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = linalg.matrix(m).inv()
    out = []
    for row in linalg.to_rows(inv):
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def deg_rk(data: WeightedData, n: int, d: Sequence[int]) -> tuple[Fraction, int]:
    """``deg_n`` and ``rk`` of a dimension vector.

    ``deg_n = N (n dim U - (n-1) dim V - sum_ij dim W_i^j / m_i)``,
    ``rk = dim U - dim V``.
    """
    vs = algebra(data).vertices
    if len(d) != len(vs):
        raise ValueError(f"dimension vector must have length {len(vs)}")
    dims = dict(zip(vs, d))
    bracket = Fraction(n * dims["u"] - (n - 1) * dims["v"])
    for i, m in enumerate(data.weights, start=1):
        for j in range(1, m):
            bracket -= Fraction(dims[w_vertex(i, j)], m)
    return data.N * bracket, dims["u"] - dims["v"]


# --- classes on the curve --------------------------------------------------


@dataclass(frozen=True)
class CurveClass:
    """Coordinates in the exceptional basis ``(O(n), O(n+1), O_{jD_i}...)``."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: "CurveClass") -> "CurveClass":
        _same_size(self, other)
        return CurveClass(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        return self + (-other)

    def __neg__(self) -> "CurveClass":
        return CurveClass(tuple(-a for a in self))

    def __rmul__(self, k) -> "CurveClass":
        return CurveClass(tuple(k * a for a in self))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> list:
        return [str(x) if x.denominator != 1 else x.numerator for x in self.coords]


def _unit(data: WeightedData, vertex: str) -> CurveClass:
    vs = algebra(data).vertices
    return CurveClass(tuple(int(v == vertex) for v in vs))


def curve_basis(data: WeightedData) -> list[CurveClass]:
    return [_unit(data, v) for v in algebra(data).vertices]


def curve_basis_labels(data: WeightedData) -> list[str]:
    labels = ["O(n)", "O(n+1)"]
    for i, m in enumerate(data.weights, start=1):
        labels.extend(f"O_{{{j}D_{i}}}" for j in range(m - 1, 0, -1))
    return labels


def pullback_class(data: WeightedData, n: int, k: int) -> CurveClass:
    """``[pi^* O(k)]``: K_0(P^1) is spanned by O(n), O(n+1) with
    ``[O(k)] = (n + 1 - k)[O(n)] + (k - n)[O(n+1)]``."""
    return (n + 1 - k) * _unit(data, "u") + (k - n) * _unit(data, "v")


def structure_class(data: WeightedData, n: int, i: int, j: int) -> CurveClass:
    """``[O_{jD_i}]`` for ``0 <= j <= m_i``.

    ``j = m_i`` uses ``[O_{m_i D_i}] = [O(n+1)] - [O(n)]``, the class of the
    full fibre; this identification is only checked through (deg, rk).
    """
    m = data.weights[i - 1]
    zero = CurveClass((0,) * len(algebra(data).vertices))
    if j == 0:
        return zero
    if 1 <= j < m:
        return _unit(data, w_vertex(i, j))
    if j == m:
        return pullback_class(data, n, n + 1) - pullback_class(data, n, n)
    raise ValueError(f"j must lie in [0, {m}]")


def character_class(data: WeightedData, n: int, i: int, a: int) -> CurveClass:
    """``[zeta(i)^a_{D_i}]`` from ``0 -> zeta^a -> O_{(a+1)D} -> O_{aD} -> 0``."""
    m = data.weights[i - 1]
    a %= m
    return structure_class(data, n, i, a + 1) - structure_class(data, n, i, a)


def curve_class_deg_rk(data: WeightedData, n: int, c: CurveClass) -> tuple[Fraction, int]:
    vs = algebra(data).vertices
    if len(c) != len(vs):
        raise ValueError(f"class must have length {len(vs)}")
    m_of = {}
    for i, m in enumerate(data.weights, start=1):
        for j in range(1, m):
            m_of[w_vertex(i, j)] = (j, m)
    deg = Fraction(0)
    rk = Fraction(0)
    for v, x in zip(vs, c):
        if v == "u":
            deg += x * n
            rk += x
        elif v == "v":
            deg += x * (n + 1)
            rk += x
        else:
            j, m = m_of[v]
            deg += x * Fraction(j, m)
    if rk.denominator != 1:
        raise ValueError("class with non-integral rank")
    return data.N * deg, int(rk)


def curve_pairing(data: WeightedData, x: CurveClass, y: CurveClass) -> Fraction:
    """``chi(x, y) = x^T G y`` on curve classes."""
    g = gram_matrix(data)
    n = len(g)
    return sum((x.coords[i] * g[i][j] * y.coords[j] for i in range(n) for j in range(n) if g[i][j]), Fraction(0))


def transport(data: WeightedData, n: int, c: CurveClass) -> DimVector:
    """Dimension vector of ``RHom(V_n, F)`` for a class ``[F]``: ``G c``."""
    g = gram_matrix(data, n)
    if len(c) != len(g):
        raise ValueError(f"class must have length {len(g)}")
    vals = [sum(g[a][b] * c.coords[b] for b in range(len(g))) for a in range(len(g))]
    if any(Fraction(x).denominator != 1 for x in vals):
        raise ValueError("transport of a non-integral class")
    return DimVector(tuple(int(x) for x in vals))


def verify_deg_rk_transport(data: WeightedData, n: int) -> Report:
    rep = Report(case={"data": data.to_json(), "n": n})
    for label, c in zip(curve_basis_labels(data), curve_basis(data)):
        lhs = deg_rk(data, n, transport(data, n, c))
        rhs = curve_class_deg_rk(data, n, c)
        rep.expect_equal(f"deg/rk of {label}", list(lhs), list(rhs))
    return rep


def dual_basis(data: WeightedData, n: int) -> list[CurveClass]:
    """Classes ``f_b`` with ``chi(E_a, f_b) = delta_ab``: columns of ``G^{-1}``."""
    ginv = inverse_unimodular(gram_matrix(data, n))
    k = len(ginv)
    return [CurveClass(tuple(ginv[a][b] for a in range(k))) for b in range(k)]


def published_dual_basis(data: WeightedData, n: int) -> list[CurveClass]:
    """``[O(n)], -[O(n-1)]`` and ``-[zeta(i)^j_{D_i}]`` dual to ``O_{jD_i}``,
    listed in the vertex order."""
    out = [pullback_class(data, n, n), -pullback_class(data, n, n - 1)]
    for i, m in enumerate(data.weights, start=1):
        out.extend(-character_class(data, n, i, j) for j in range(m - 1, 0, -1))
    return out


def verify_dual_basis(data: WeightedData, n: int) -> Report:
    rep = Report(case={"data": data.to_json(), "n": n})
    basis = curve_basis(data)
    dual = dual_basis(data, n)
    pairing = [[curve_pairing(data, e, f) for f in dual] for e in basis]
    k = len(basis)
    rep.expect_equal("pairing(basis, dual) is the identity", pairing, [[int(i == j) for j in range(k)] for i in range(k)])
    twisted = {w_vertex(i, m - 1) for i, m in enumerate(data.weights, start=1)}
    rows = zip(algebra(data).vertices, curve_basis_labels(data), dual, published_dual_basis(data, n))
    for vertex, label, f, g in rows:
        note = "uses [O_{mD}] = [O(n+1)] - [O(n)]; equivariant twist not modeled" if vertex in twisted else None
        rep.expect_equal(f"dual of {label}", f.to_json(), g.to_json(), note)
    return rep


# --- mutations ---------------------------------------------------------------


def left_mutation(data: WeightedData, e: CurveClass, f: CurveClass) -> CurveClass:
    """``[L_E F] = chi(E, F)[E] - [F]``."""
    return curve_pairing(data, e, f) * e - f


def right_mutation(data: WeightedData, e: CurveClass, f: CurveClass) -> CurveClass:
    """``[R_E F] = chi(F, E)[E] - [F]``; inverse to the left mutation on
    exceptional pairs."""
    return curve_pairing(data, f, e) * e - f


def mutate_step(data: WeightedData, classes: Sequence[CurveClass], position: int, direction: str = "left") -> list[CurveClass]:
    """Mutate the pair at ``(position - 1, position)``.

    ``left``: ``(E, F) -> (L_E F, E)``; ``right``: ``(F, E) -> (E, R_E F)``.
    """
    classes = list(classes)
    if not 1 <= position < len(classes):
        raise IndexError(f"position must lie in [1, {len(classes)})")
    x, y = classes[position - 1], classes[position]
    if direction == "left":
        classes[position - 1], classes[position] = left_mutation(data, x, y), x
    elif direction == "right":
        classes[position - 1], classes[position] = y, right_mutation(data, y, x)
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return classes


def exc_col1(data: WeightedData, n: int, i: int) -> list[CurveClass]:
    """``(O_{(m-1)D_i}, ..., O_{2D_i}, O_{D_i})``."""
    m = data.weights[i - 1]
    return [structure_class(data, n, i, j) for j in range(m - 1, 0, -1)]


def exc_col2(data: WeightedData, n: int, i: int) -> list[CurveClass]:
    """``(O_{D_i}, zeta[1], ..., zeta^{m-2}[m-2])``; a shift by ``a`` flips
    the class by ``(-1)^a``."""
    m = data.weights[i - 1]
    out = [structure_class(data, n, i, 1)]
    out.extend((-1) ** a * character_class(data, n, i, a) for a in range(1, m - 1))
    return out


def mutation_chain(data: WeightedData, n: int, i: int) -> Report:
    """Turn ``exc_col2`` into ``exc_col1`` by left mutations.

    Round ``a`` (``a = 1..m-2``) moves the ``a``-th character class to the
    front through ``O_{D}, ..., O_{aD}``; the class that arrives is checked
    against ``[O_{(a+1)D}] = [zeta^a] + [O_{aD}]``.
    """
    rep = Report(case={"data": data.to_json(), "n": n, "i": i})
    m = data.weights[i - 1]
    col = exc_col2(data, n, i)
    for a in range(1, m - 1):
        # current layout: (O_{aD}, ..., O_{D}, (-1)^a zeta^a, ...)
        for pos in range(a, 0, -1):
            col = mutate_step(data, col, pos, "left")
        expected = character_class(data, n, i, a) + structure_class(data, n, i, a)
        rep.expect_equal(
            f"O_{{{a + 1}D_{i}}} = zeta^{a} + O_{{{a}D_{i}}}", col[0].to_json(), expected.to_json()
        )
    rep.expect_equal(
        "mutated exc_col2 equals exc_col1",
        [c.to_json() for c in col],
        [c.to_json() for c in exc_col1(data, n, i)],
    )
    return rep


def k0_rank(data: WeightedData) -> int:
    return 2 + sum(m - 1 for m in data.weights)


# m = 2 has one transcendental modulus; this rational surrogate is the
# exact cross-ratio at tau = i (e1 = -e3, e2 = 0).
M2_SURROGATE = ("inf", 1, 0, -1)


def case_data(m: int, surrogate: Sequence | None = None) -> WeightedData:
    """Weighted data of C/L -> P^1 for the order-m orbifold.

    Weights are the derived stabilizer orders, ``N = m``; three branch points
    are normalized to ``(inf, 0, 1)``, four take ``surrogate``.
    """
    from .lattice import derive_ramification, orbifold_case

    datum = derive_ramification(orbifold_case(m))
    weights = datum.multiplicities
    if len(weights) == 3:
        points = surrogate or ("inf", 0, 1)
    else:
        points = surrogate or M2_SURROGATE
    return WeightedData.from_points(weights, points, N=m)
