"""Right modules over the bound path algebra as quiver representations.

A quiver arrow ``s -> t`` acts on a right module by a linear map
``M_t -> M_s``; for Q_m that gives ``W_i^1 -> ... -> W_i^{m_i-1} -> V`` and
``X0, X1 : V -> U``. Matrices are exact rationals (``flint.fmpq_mat``) of
shape ``dim M_s x dim M_t``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path as FsPath
from typing import Sequence

from flint import fmpq, fmpq_mat

from . import linalg
from .kzero import DimVector
from .linalg import Mat
from .quiver import PathAlgebra

__all__ = [
    "Representation",
    "MorphismSpace",
    "ProjectiveResolution",
    "Decomposition",
    "GlobalDimensionError",
    "zero_module",
    "simple",
    "projective",
    "direct_sum",
    "check_relations",
    "hom",
    "top_generators",
    "projective_resolution",
    "ext",
    "ext_dims",
    "euler_characteristic",
    "endomorphism_radical_codim",
    "is_indecomposable",
    "decompose",
    "random_module",
    "subrepresentation",
]


class GlobalDimensionError(RuntimeError):
    """A projective resolution did not stop after three terms."""


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: PathAlgebra
    dims: tuple[int, ...]
    maps: dict[str, Mat] = field(default_factory=dict)

    def __post_init__(self):
        alg = self.algebra
        if len(self.dims) != len(alg.vertices):
            raise ValueError("one dimension per vertex is required")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")
        maps = dict(self.maps)
        for arr in alg.quiver.arrows:
            shape = (self.dim(arr.source), self.dim(arr.target))
            m = maps.get(arr.name)
            if m is None:
                maps[arr.name] = fmpq_mat(*shape)
            elif (m.nrows(), m.ncols()) != shape:
                raise ValueError(f"map {arr.name} has shape {(m.nrows(), m.ncols())}, expected {shape}")
        if set(maps) - set(alg.quiver.arrow):
            raise ValueError(f"unknown arrows {sorted(set(maps) - set(alg.quiver.arrow))}")
        object.__setattr__(self, "maps", maps)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.algebra.vertices)}

    def dim(self, vertex: str) -> int:
        return self.dims[self._index[vertex]]

    @property
    def dim_vector(self) -> DimVector:
        return DimVector(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_map(self, path: tuple[str, ...], vertex: str | None = None) -> Mat:
        """The composite ``M_t -> M_s`` of a path ``s -> t`` (trivial path:
        identity at ``vertex``)."""
        if not path:
            return linalg.identity(self.dim(vertex))
        out = self.maps[path[0]]
        for a in path[1:]:
            out = out * self.maps[a]
        return out

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {k: [[str(linalg.to_fraction(x)) for x in row] for row in _rows(m)] for k, m in self.maps.items()},
        }

    @classmethod
    def from_json(cls, algebra: PathAlgebra, obj: dict) -> "Representation":
        dims = tuple(int(d) for d in obj["dims"])
        tmp = {v: d for v, d in zip(algebra.vertices, dims)}
        maps = {}
        for name, rows in obj.get("maps", {}).items():
            arr = algebra.quiver.arrow[name]
            maps[name] = linalg.matrix(rows, tmp[arr.target]) if rows else fmpq_mat(tmp[arr.source], tmp[arr.target])
        return cls(algebra, dims, maps)

    @classmethod
    def load(cls, algebra: PathAlgebra, path) -> "Representation":
        return cls.from_json(algebra, json.loads(FsPath(path).read_text(encoding="utf-8")))

    def __repr__(self):
        return f"Representation(dims={list(self.dims)})"


def _rows(m: Mat) -> list[list]:
    return [[m[i, j] for j in range(m.ncols())] for i in range(m.nrows())]


def zero_module(alg: PathAlgebra) -> Representation:
    return Representation(alg, (0,) * len(alg.vertices))


def simple(alg: PathAlgebra, vertex: str) -> Representation:
    return Representation(alg, tuple(int(v == vertex) for v in alg.vertices))


def projective(alg: PathAlgebra, a: str) -> Representation:
    """The indecomposable projective with top at ``a``.

    Its space at ``b`` is spanned by residues of paths ``b -> a``; an arrow
    ``s -> t`` maps a path ``p`` from ``t`` to the path ``arrow . p``.
    """
    dims = tuple(alg.dim(b, a) for b in alg.vertices)
    maps = {}
    for arr in alg.quiver.arrows:
        s, t = arr.source, arr.target
        cols = []
        for p in alg.basis.get((t, a), []):
            cols.append(alg.reduce(s, a, {(arr.name,) + p: 1}))
        m = fmpq_mat(alg.dim(s, a), len(cols))
        for j, col in enumerate(cols):
            for i, x in enumerate(col):
                m[i, j] = fmpq(x.numerator, x.denominator)
        maps[arr.name] = m
    return Representation(alg, dims, maps)


def direct_sum(*mods: Representation) -> Representation:
    alg = mods[0].algebra
    dims = tuple(sum(m.dims[k] for m in mods) for k in range(len(alg.vertices)))
    maps = {a.name: linalg.block_diag([m.maps[a.name] for m in mods]) for a in alg.quiver.arrows}
    return Representation(alg, dims, maps)


def check_relations(m: Representation) -> bool:
    alg = m.algebra
    for rho in alg.relations:
        s, t = rho.source(alg.quiver), rho.target(alg.quiver)
        acc = fmpq_mat(m.dim(s), m.dim(t))
        for c, path in rho.terms:
            acc = acc + m.path_map(path) * fmpq(c.numerator, c.denominator)
        if not linalg.is_zero(acc):
            return False
    return True


# --- morphisms ---------------------------------------------------------------


@dataclass
class MorphismSpace:
    """A basis of Hom(M, N); each element maps vertex -> matrix ``N_a x M_a``."""

    source: Representation
    target: Representation
    basis: list[dict[str, Mat]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def satisfies_intertwining(self) -> bool:
        m, n = self.source, self.target
        for f in self.basis:
            for arr in m.algebra.quiver.arrows:
                lhs = f[arr.source] * m.maps[arr.name]
                rhs = n.maps[arr.name] * f[arr.target]
                if lhs != rhs:
                    return False
        return True


def _hom_system(m: Representation, n: Representation) -> tuple[Mat, list[tuple[str, int, int, int]]]:
    """Linear equations on the entries of ``(f_a)`` for ``f_s M_arr = N_arr f_t``."""
    alg = m.algebra
    layout = []
    off = 0
    offsets = {}
    for v in alg.vertices:
        r, c = n.dim(v), m.dim(v)
        offsets[v] = off
        layout.append((v, off, r, c))
        off += r * c
    nvars = off
    rows: list[dict[int, fmpq]] = []
    for arr in alg.quiver.arrows:
        s, t = arr.source, arr.target
        ms, mt, ns, nt = m.dim(s), m.dim(t), n.dim(s), n.dim(t)
        if ns == 0 or mt == 0:
            continue
        ma = _rows(m.maps[arr.name])  # ms x mt
        na = _rows(n.maps[arr.name])  # ns x nt
        os_, ot = offsets[s], offsets[t]
        for i in range(ns):
            for j in range(mt):
                row: dict[int, fmpq] = {}
                # (f_s M)[i, j] = sum_k f_s[i, k] M[k, j]; f_s[i, k] at os_ + i*ms + k
                for k in range(ms):
                    c = ma[k][j]
                    if c != 0:
                        idx = os_ + i * ms + k
                        row[idx] = row.get(idx, 0) + c
                # (N f_t)[i, j] = sum_l N[i, l] f_t[l, j]; f_t[l, j] at ot + l*mt + j
                for l in range(nt):
                    c = na[i][l]
                    if c != 0:
                        idx = ot + l * mt + j
                        row[idx] = row.get(idx, 0) - c
                if row:
                    rows.append(row)
    a = fmpq_mat(len(rows), nvars)
    for i, row in enumerate(rows):
        for j, c in row.items():
            a[i, j] = c
    return a, layout


def hom(m: Representation, n: Representation) -> MorphismSpace:
    """Hom(M, N) as the kernel of the intertwining equations."""
    a, layout = _hom_system(m, n)
    nvars = a.ncols()
    ker = linalg.nullspace(a) if a.nrows() else linalg.identity(nvars)
    basis = []
    for col in range(ker.ncols()):
        f = {}
        for v, off, r, c in layout:
            x = fmpq_mat(r, c)
            for i in range(r):
                for j in range(c):
                    x[i, j] = ker[off + i * c + j, col]
            f[v] = x
        basis.append(f)
    return MorphismSpace(m, n, basis)


def hom_dim(m: Representation, n: Representation) -> int:
    a, _ = _hom_system(m, n)
    return a.ncols() - linalg.rank(a)


# --- subrepresentations, covers, resolutions --------------------------------


def subrepresentation(m: Representation, bases: dict[str, Mat]) -> Representation:
    """The subrepresentation spanned by columns of ``bases[v]`` (full column
    rank, closed under the maps)."""
    alg = m.algebra
    dims = tuple(bases[v].ncols() for v in alg.vertices)
    maps = {}
    for arr in alg.quiver.arrows:
        s, t = arr.source, arr.target
        maps[arr.name] = linalg.solve_left(bases[s], m.maps[arr.name] * bases[t])
    return Representation(alg, dims, maps)


def top_generators(m: Representation) -> list[tuple[str, Mat]]:
    """Vectors ``(vertex, column)`` spanning a complement of the radical.

    The radical at ``a`` is the sum of images of all maps into ``M_a``.
    """
    alg = m.algebra
    gens = []
    for a in alg.vertices:
        d = m.dim(a)
        if d == 0:
            continue
        images = [m.maps[arr.name] for arr in alg.quiver.out_arrows(a) if m.dim(arr.target)]
        span = linalg.hstack(images) if images else fmpq_mat(d, 0)
        current = linalg.column_space(span) if span.ncols() else span
        rk = current.ncols()
        for k in range(d):
            e = fmpq_mat(d, 1)
            e[k, 0] = 1
            trial = linalg.hstack([current, e]) if current.ncols() else e
            if linalg.rank(trial) > rk:
                current = trial
                rk += 1
                gens.append((a, e))
            if rk == d:
                break
    return gens


def _cover_matrices(alg: PathAlgebra, gens: Sequence[tuple[str, Mat]], x: Representation) -> dict[str, Mat]:
    """Vertex matrices of ``(+)_k P_{a_k} -> X`` sending ``e_{a_k}`` to ``g_k``."""
    out = {}
    for b in alg.vertices:
        cols = []
        for a, g in gens:
            for p in alg.basis.get((b, a), []):
                cols.append(x.path_map(p, a) * g)
        out[b] = linalg.hstack(cols) if cols else fmpq_mat(x.dim(b), 0)
    return out


def _sum_of_projectives(alg: PathAlgebra, vertices: Sequence[str]) -> Representation:
    if not vertices:
        return zero_module(alg)
    return direct_sum(*[projective(alg, a) for a in vertices])


def _kernel(f: dict[str, Mat], alg: PathAlgebra) -> dict[str, Mat]:
    return {b: linalg.nullspace(f[b]) for b in alg.vertices}


@dataclass
class ProjectiveResolution:
    """``0 -> P2 -> P1 -> P0 -> M`` with each ``P_j = (+) P_a`` over generators.

    ``generators[j]`` lists the tops of ``P_j``; ``images[j][k]`` is the image
    of the k-th generator of ``P_j`` in ``P_{j-1}`` (``j >= 1``) or in ``M``
    (``j = 0``), as a column vector at that vertex. ``maps[j]`` holds the
    vertex matrices of ``P_j -> P_{j-1}`` (``P_0 -> M`` for ``j = 0``).
    """

    module: Representation
    terms: list[Representation]
    generators: list[list[str]]
    images: list[list[Mat]]
    maps: list[dict[str, Mat]]

    @property
    def length(self) -> int:
        return sum(1 for g in self.generators if g) - 1

    def is_complex(self) -> bool:
        alg = self.module.algebra
        for j in range(1, len(self.maps)):
            for b in alg.vertices:
                prod = self.maps[j - 1][b] * self.maps[j][b]
                if not linalg.is_zero(prod):
                    return False
        return True

    def is_exact(self) -> bool:
        """Augmentation onto, exact at each P_j, last map injective."""
        alg = self.module.algebra
        for b in alg.vertices:
            if linalg.rank(self.maps[0][b]) != self.module.dim(b):
                return False
            for j in range(len(self.maps)):
                f = self.maps[j][b]
                ker = f.ncols() - linalg.rank(f)
                nxt = self.maps[j + 1][b] if j + 1 < len(self.maps) else None
                img = linalg.rank(nxt) if nxt is not None else 0
                if ker != img:
                    return False
        return True


def projective_resolution(m: Representation, max_length: int = 2) -> ProjectiveResolution:
    """Minimal projective resolution through top/radical covers."""
    alg = m.algebra
    terms, generators, images, maps = [], [], [], []
    target = m
    inclusion = None  # bases of the current kernel inside the previous term
    for j in range(max_length + 2):
        gens = top_generators(target)
        if not gens:
            break
        if j > max_length:
            raise GlobalDimensionError("global dimension violation: resolution longer than 2")
        p = _sum_of_projectives(alg, [a for a, _ in gens])
        cover = _cover_matrices(alg, gens, target)
        if inclusion is None:
            imgs = [g for _, g in gens]
            f = cover
        else:
            imgs = [inclusion[a] * g for a, g in gens]
            f = {b: inclusion[b] * cover[b] for b in alg.vertices}
        terms.append(p)
        generators.append([a for a, _ in gens])
        images.append(imgs)
        maps.append(f)
        kernel_bases = _kernel(cover, alg)
        if all(kb.ncols() == 0 for kb in kernel_bases.values()):
            break
        target = subrepresentation(p, kernel_bases)
        inclusion = kernel_bases
    return ProjectiveResolution(m, terms, generators, images, maps)


def _coboundary(res: ProjectiveResolution, j: int, n: Representation) -> Mat:
    """Matrix of ``Hom(P_j, N) -> Hom(P_{j+1}, N)`` in generator coordinates."""
    alg = n.algebra
    src = res.generators[j]
    rows_gen = res.generators[j + 1] if j + 1 < len(res.generators) else []
    col_off, c = [], 0
    for a in src:
        col_off.append(c)
        c += n.dim(a)
    ncols = c
    row_off, r = [], 0
    for b in rows_gen:
        row_off.append(r)
        r += n.dim(b)
    out = fmpq_mat(r, ncols)
    for l, b in enumerate(rows_gen):
        y = res.images[j + 1][l]  # column in (P_j)_b
        pos = 0
        for k, a in enumerate(src):
            for path in alg.basis.get((b, a), []):
                coeff = y[pos, 0]
                pos += 1
                if coeff == 0:
                    continue
                block = n.path_map(path, a) * coeff  # N_a -> N_b
                for i in range(block.nrows()):
                    for jj in range(block.ncols()):
                        if block[i, jj] != 0:
                            out[row_off[l] + i, col_off[k] + jj] += block[i, jj]
    return out


def ext_dims(m: Representation, n: Representation, res: ProjectiveResolution | None = None) -> list[int]:
    """``[dim Hom, dim Ext^1, dim Ext^2]`` from the cohomology of Hom(P., N)."""
    res = res or projective_resolution(m)
    k = len(res.generators)
    cochain_dims = [sum(n.dim(a) for a in res.generators[j]) if j < k else 0 for j in range(3)]
    ranks = []
    for j in range(3):
        if j < k and j + 1 < k:
            ranks.append(linalg.rank(_coboundary(res, j, n)))
        else:
            ranks.append(0)
    out = []
    for i in range(3):
        ker = cochain_dims[i] - ranks[i]
        im = ranks[i - 1] if i > 0 else 0
        out.append(ker - im)
    return out


def ext(m: Representation, n: Representation, i: int) -> int:
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    return ext_dims(m, n)[i]


def euler_characteristic(m: Representation, n: Representation) -> int:
    h, e1, e2 = ext_dims(m, n)
    return h - e1 + e2


# --- indecomposability and Krull-Schmidt -------------------------------------


def _flatten(f: dict[str, Mat], alg: PathAlgebra) -> Mat:
    return linalg.block_diag([f[v] for v in alg.vertices])


def endomorphism_radical_codim(m: Representation, space: MorphismSpace | None = None) -> int:
    """``dim End(M) / rad End(M)``.

    In characteristic zero the radical of a matrix algebra acting faithfully
    on a space is the radical of the trace form ``(f, g) -> tr(f g)``.
    """
    space = space or hom(m, m)
    alg = m.algebra
    mats = [_flatten(f, alg) for f in space.basis]
    d = len(mats)
    gram = fmpq_mat(d, d)
    for i in range(d):
        for j in range(i, d):
            prod = mats[i] * mats[j]
            tr = sum((prod[k, k] for k in range(prod.nrows())), fmpq(0))
            gram[i, j] = tr
            gram[j, i] = tr
    return linalg.rank(gram)


def _split(m: Representation, f: dict[str, Mat]) -> list[dict[str, Mat]] | None:
    """Kernel decomposition along the coprime factors of the minimal polynomial."""
    alg = m.algebra
    big = _flatten(f, alg)
    mp = big.minpoly()
    _, factors = mp.factor()
    if len(factors) < 2:
        return None
    parts = []
    for p, e in factors:
        pe = p ** e
        parts.append({v: linalg.nullspace(linalg.poly_eval(pe, f[v])) for v in alg.vertices})
    return parts


def _random_endomorphism(space: MorphismSpace, rng: random.Random) -> dict[str, Mat]:
    coeffs = [rng.randint(-3, 3) for _ in space.basis]
    out = {}
    for v in space.basis[0]:
        acc = space.basis[0][v] * 0
        for c, f in zip(coeffs, space.basis):
            if c:
                acc = acc + f[v] * c
        out[v] = acc
    return out


def _find_splitting(m: Representation, space: MorphismSpace, rng: random.Random, budget: int):
    for f in space.basis:
        parts = _split(m, f)
        if parts:
            return parts
    for _ in range(budget):
        parts = _split(m, _random_endomorphism(space, rng))
        if parts:
            return parts
    return None


def is_indecomposable(m: Representation, rng: random.Random | None = None, budget: int = 40) -> str:
    """``"yes"``, ``"no"`` or ``"unknown"`` (Las Vegas)."""
    if m.is_zero():
        raise ValueError("the zero module is not indecomposable")
    space = hom(m, m)
    if endomorphism_radical_codim(m, space) == 1:
        return "yes"
    rng = rng or random.Random(0)
    return "no" if _find_splitting(m, space, rng, budget) else "unknown"


@dataclass
class Decomposition:
    """Summands with their embeddings ``bases[v]`` into the original module."""

    module: Representation
    summands: list[Representation]
    bases: list[dict[str, Mat]]
    unknown: list[bool]

    @property
    def has_unknown_leaves(self) -> bool:
        return any(self.unknown)

    def isomorphism(self) -> dict[str, Mat]:
        """Vertex matrices of ``(+) summands -> M`` (columns: summand bases)."""
        alg = self.module.algebra
        out = {}
        for v in alg.vertices:
            blocks = [b[v] for b in self.bases]
            out[v] = linalg.hstack(blocks) if blocks else fmpq_mat(self.module.dim(v), 0)
        return out

    def verify(self) -> bool:
        """The summed dimensions match and the block map is an isomorphism
        of representations."""
        alg = self.module.algebra
        total = [sum(s.dims[k] for s in self.summands) for k in range(len(alg.vertices))]
        if tuple(total) != self.module.dims:
            return False
        iso = self.isomorphism()
        for v in alg.vertices:
            if linalg.rank(iso[v]) != self.module.dim(v):
                return False
        ssum = direct_sum(*self.summands) if self.summands else zero_module(alg)
        for arr in alg.quiver.arrows:
            if self.module.maps[arr.name] * iso[arr.target] != iso[arr.source] * ssum.maps[arr.name]:
                return False
        return True


def decompose(m: Representation, rng: random.Random | None = None, budget: int = 40) -> Decomposition:
    alg = m.algebra
    rng = rng or random.Random(0)
    eye = {v: linalg.identity(m.dim(v)) for v in alg.vertices}
    todo = [(m, eye)] if not m.is_zero() else []
    summands, bases, unknown = [], [], []
    while todo:
        x, emb = todo.pop()
        space = hom(x, x)
        if endomorphism_radical_codim(x, space) == 1:
            summands.append(x)
            bases.append(emb)
            unknown.append(False)
            continue
        parts = _find_splitting(x, space, rng, budget)
        if parts is None:
            summands.append(x)
            bases.append(emb)
            unknown.append(True)
            continue
        for part in parts:
            sub = subrepresentation(x, part)
            if sub.is_zero():
                continue
            todo.append((sub, {v: emb[v] * part[v] for v in alg.vertices}))
    # deterministic order: by dimension vector, then discovery
    order = sorted(range(len(summands)), key=lambda k: (summands[k].dims, k))
    return Decomposition(m, [summands[k] for k in order], [bases[k] for k in order], [unknown[k] for k in order])


# --- random corpus -----------------------------------------------------------


def random_module(alg: PathAlgebra, dim_bound: int, seed: int | random.Random) -> Representation:
    """A random module with all dimensions at most ``dim_bound``.

    The chain maps are sampled freely; ``(X0, X1)`` is then drawn from the
    exact solution space of the relations.
    """
    if dim_bound < 1:
        raise ValueError("dim_bound must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    vs = alg.vertices
    while True:
        dims = tuple(rng.randint(0, dim_bound) for _ in vs)
        if any(dims):
            break
    dim = dict(zip(vs, dims))
    density = rng.choice([0.5, 0.8, 1.0])

    def rand_mat(r, c):
        out = fmpq_mat(r, c)
        for i in range(r):
            for j in range(c):
                if rng.random() < density:
                    out[i, j] = rng.randint(-2, 2)
        return out

    maps = {}
    x_arrows = [a for a in alg.quiver.arrows if a.source == "u"]
    for arr in alg.quiver.arrows:
        if arr in x_arrows:
            continue
        maps[arr.name] = rand_mat(dim[arr.source], dim[arr.target])

    du, dv = dim["u"], dim["v"]
    nx = len(x_arrows)
    nvars = nx * du * dv
    if nvars:
        eqs = []
        for rho in alg.relations:
            t = rho.target(alg.quiver)
            e = maps[f"e{rho.index}"]  # dim V x dim W
            coeff = {path[0]: c for c, path in rho.terms}
            for i in range(du):
                for j in range(dim[t]):
                    row = [0] * nvars
                    for xi, xa in enumerate(x_arrows):
                        c = coeff.get(xa.name)
                        if not c:
                            continue
                        for k in range(dv):
                            if e[k, j] != 0:
                                row[xi * du * dv + i * dv + k] += c * linalg.to_fraction(e[k, j])
                    if any(row):
                        eqs.append(row)
        ker = linalg.nullspace(linalg.matrix(eqs, nvars)) if eqs else linalg.identity(nvars)
        sol = fmpq_mat(nvars, 1)
        for col in range(ker.ncols()):
            c = rng.randint(-2, 2)
            if c:
                for r in range(nvars):
                    sol[r, 0] += ker[r, col] * c
        for xi, xa in enumerate(x_arrows):
            mat = fmpq_mat(du, dv)
            for i in range(du):
                for k in range(dv):
                    mat[i, k] = sol[xi * du * dv + i * dv + k, 0]
            maps[xa.name] = mat
    return Representation(alg, dims, maps)
