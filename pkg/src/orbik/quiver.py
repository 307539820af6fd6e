"""The quiver Q_m, its quadratic relations and the bound path algebra.

Paths compose left to right: the path ``(x0, e1)`` runs u -> v -> w_1^{m_1-1}.
Vertices are ordered ``u, v, w_1^{m_1-1}, ..., w_1^1, w_2^{m_2-1}, ...`` so
that every arrow goes forward; this is also the order of the exceptional
collection the algebra comes from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path as FsPath
from typing import Iterable, Sequence

from . import linalg
from .linalg import Mat

__all__ = [
    "INFINITY",
    "WeightedData",
    "Arrow",
    "Quiver",
    "Relation",
    "PathAlgebra",
    "w_vertex",
    "build_quiver",
    "build_relations",
    "algebra_basis",
    "cartan_matrix",
    "compose",
]

ProjPoint = tuple[Fraction, Fraction]
INFINITY: ProjPoint = (Fraction(1), Fraction(0))


def _normalize_point(p: ProjPoint) -> ProjPoint:
    a, b = Fraction(p[0]), Fraction(p[1])
    if a == 0 and b == 0:
        raise ValueError("[0:0] is not a projective point")
    s = b if b != 0 else a
    return (a / s, b / s)


def parse_point(obj) -> ProjPoint:
    """Read a branch point: ``"inf"``, a rational ``"p/q"`` (the affine point
    ``[p/q : 1]``) or a four-entry list ``[num, den, num, den]``."""
    if isinstance(obj, str):
        s = obj.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INFINITY
        return (Fraction(s), Fraction(1))
    if isinstance(obj, (int, Fraction)):
        return (Fraction(obj), Fraction(1))
    if isinstance(obj, (list, tuple)) and len(obj) == 4:
        a = Fraction(int(obj[0]), int(obj[1]))
        b = Fraction(int(obj[2]), int(obj[3]))
        return (a, b)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return (Fraction(obj[0]), Fraction(obj[1]))
    raise ValueError(f"cannot read a projective point from {obj!r}")


@dataclass(frozen=True)
class WeightedData:
    """Weights ``m_i >= 2``, distinct branch points ``[alpha_i : beta_i]`` and
    the normalization constant ``N`` (the group order in the degree formula).
    """

    weights: tuple[int, ...]
    lam: tuple[ProjPoint, ...]
    N: int = 1

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(m) for m in self.weights))
        lam = tuple(_normalize_point(p) for p in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(self.weights) < 2:
            raise ValueError("need at least two weights")
        if any(m < 2 for m in self.weights):
            raise ValueError("weights must be at least 2")
        if len(lam) != len(self.weights):
            raise ValueError("one branch point per weight is required")
        if len(set(lam)) != len(lam):
            raise ValueError("branch points must be distinct")
        if self.N < 1:
            raise ValueError("N must be positive")

    @property
    def r(self) -> int:
        return len(self.weights)

    @classmethod
    def from_points(cls, weights: Sequence[int], points: Iterable, N: int = 1) -> "WeightedData":
        return cls(tuple(weights), tuple(parse_point(p) for p in points), N)

    @classmethod
    def from_json(cls, obj: dict) -> "WeightedData":
        return cls.from_points(obj["weights"], obj["lambda"], int(obj.get("N", 1)))

    @classmethod
    def load(cls, path) -> "WeightedData":
        return cls.from_json(json.loads(FsPath(path).read_text(encoding="utf-8")))

    def to_json(self) -> dict:
        lam = []
        for a, b in self.lam:
            if (a, b) == INFINITY:
                lam.append("inf")
            else:
                lam.append([a.numerator, a.denominator, b.numerator, b.denominator])
        return {"weights": list(self.weights), "lambda": lam, "N": self.N}

    def divides_N(self) -> bool:
        return all(self.N % m == 0 for m in self.weights)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


def w_vertex(i: int, j: int) -> str:
    """Name of the vertex ``w_i^j`` (1-based)."""
    return f"w{i}^{j}"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def out_arrows(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def in_arrows(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def has_oriented_cycle(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v, k in indeg.items() if k == 0]
        seen = 0
        while stack:
            x = stack.pop()
            seen += 1
            for a in self.out_arrows(x):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen != len(self.vertices)

    def paths(self) -> list[tuple[str, ...]]:
        """All nonempty-length paths, as tuples of arrow names."""
        out = []
        frontier = [(a.name,) for a in self.arrows]
        while frontier:
            out.extend(frontier)
            frontier = [
                p + (b.name,) for p in frontier for b in self.out_arrows(self.arrow[p[-1]].target)
            ]
        return out


def build_quiver(weights: Sequence[int]) -> Quiver:
    weights = tuple(weights)
    if any(m < 2 for m in weights):
        raise ValueError("weights must be at least 2")
    vertices = ["u", "v"]
    arrows = [Arrow("x0", "u", "v"), Arrow("x1", "u", "v")]
    for i, m in enumerate(weights, start=1):
        vertices.extend(w_vertex(i, j) for j in range(m - 1, 0, -1))
        arrows.append(Arrow(f"e{i}", "v", w_vertex(i, m - 1)))
        for j in range(m - 1, 1, -1):
            # w_i^j -> w_i^{j-1}
            arrows.append(Arrow(f"c{i}^{j - 1}", w_vertex(i, j), w_vertex(i, j - 1)))
    return Quiver(tuple(vertices), tuple(arrows))


@dataclass(frozen=True)
class Relation:
    """``(alpha * x0 + beta * x1) . e_i = 0``."""

    index: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("relation coefficients cannot both vanish")

    @property
    def terms(self) -> list[tuple[Fraction, tuple[str, ...]]]:
        e = f"e{self.index}"
        out = []
        if self.alpha:
            out.append((Fraction(self.alpha), ("x0", e)))
        if self.beta:
            out.append((Fraction(self.beta), ("x1", e)))
        return out

    def source(self, quiver: Quiver) -> str:
        return "u"

    def target(self, quiver: Quiver) -> str:
        return quiver.arrow[f"e{self.index}"].target


def build_relations(data: WeightedData) -> list[Relation]:
    if len(set(data.lam)) != len(data.lam):
        raise ValueError("branch points must be distinct")
    return [Relation(i, a, b) for i, (a, b) in enumerate(data.lam, start=1)]


def compose(p: tuple[str, ...], q: tuple[str, ...]) -> tuple[str, ...]:
    """Concatenate paths, ``p`` first."""
    return p + q


@dataclass
class PathAlgebra:
    """``kQ / (relations)`` with a basis of residues per vertex pair.

    ``paths[(a, b)]`` lists every path from ``a`` to ``b`` (the trivial path
    is the empty tuple). ``basis[(a, b)]`` lists the paths whose residues form
    a basis of the quotient; ``reduce`` rewrites any path combination in it.
    """

    quiver: Quiver
    relations: list[Relation]
    data: WeightedData | None = None
    paths: dict[tuple[str, str], list[tuple[str, ...]]] = field(default_factory=dict)
    basis: dict[tuple[str, str], list[tuple[str, ...]]] = field(default_factory=dict)
    _ideal: dict[tuple[str, str], tuple[Mat, list[int]]] = field(default_factory=dict, repr=False)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def dim(self, a: str, b: str) -> int:
        return len(self.basis.get((a, b), []))

    def source(self, p: tuple[str, ...], default: str | None = None) -> str:
        return self.quiver.arrow[p[0]].source if p else default

    def target(self, p: tuple[str, ...], default: str | None = None) -> str:
        return self.quiver.arrow[p[-1]].target if p else default

    def reduce(self, a: str, b: str, combo: dict[tuple[str, ...], Fraction]) -> list[Fraction]:
        """Coordinates of a combination of paths ``a -> b`` in ``basis[(a, b)]``."""
        plist = self.paths.get((a, b), [])
        pos = {p: k for k, p in enumerate(plist)}
        vec = [Fraction(0)] * len(plist)
        for p, c in combo.items():
            vec[pos[p]] += Fraction(c)
        rmat, pivots = self._ideal.get((a, b), (None, []))
        for row, col in enumerate(pivots):
            c = vec[col]
            if c:
                for j in range(len(plist)):
                    if rmat[row, j] != 0:
                        vec[j] -= c * linalg.to_fraction(rmat[row, j])
        return [vec[pos[p]] for p in self.basis.get((a, b), [])]


def algebra_basis(data: WeightedData, relations: Sequence[Relation] | None = None) -> PathAlgebra:
    """Enumerate paths of Q_m and quotient each (a, b)-graded piece by the
    span of ``p . rho . q`` for relations ``rho`` and paths ``p``, ``q``."""
    quiver = build_quiver(data.weights)
    rels = list(build_relations(data) if relations is None else relations)
    alg = PathAlgebra(quiver, rels, data)
    for v in quiver.vertices:
        alg.paths[(v, v)] = [()]
    for p in quiver.paths():
        key = (alg.source(p), alg.target(p))
        alg.paths.setdefault(key, []).append(p)

    # paths ending / starting at each vertex, trivial ones included
    ending = {v: [()] for v in quiver.vertices}
    starting = {v: [()] for v in quiver.vertices}
    for p in quiver.paths():
        ending[alg.target(p)].append(p)
        starting[alg.source(p)].append(p)

    ideal: dict[tuple[str, str], list[dict]] = {}
    for rho in rels:
        s, t = rho.source(quiver), rho.target(quiver)
        for p in ending[s]:
            for q in starting[t]:
                a = alg.source(p, s)
                b = alg.target(q, t)
                elem = {p + body + q: c for c, body in rho.terms}
                ideal.setdefault((a, b), []).append(elem)

    for key, plist in alg.paths.items():
        gens = ideal.get(key, [])
        if gens:
            pos = {p: k for k, p in enumerate(plist)}
            rows = []
            for g in gens:
                row = [Fraction(0)] * len(plist)
                for p, c in g.items():
                    row[pos[p]] += c
                rows.append(row)
            rmat, pivots = linalg.rref(linalg.matrix(rows, len(plist)))
            alg._ideal[key] = (rmat, pivots)
            pset = set(pivots)
            alg.basis[key] = [p for k, p in enumerate(plist) if k not in pset]
        else:
            alg.basis[key] = list(plist)
        if not alg.basis[key]:
            del alg.basis[key]
    return alg


def cartan_matrix(data: WeightedData | PathAlgebra) -> list[list[int]]:
    """``C[a][b]`` = dimension of the residues of paths from ``a`` to ``b``."""
    alg = data if isinstance(data, PathAlgebra) else algebra_basis(data)
    vs = alg.vertices
    return [[alg.dim(a, b) for b in vs] for a in vs]
