"""Slope-theta torsion pairs on modules and on K_0 classes.

A nonzero class with ``(deg_n, rk)`` is torsion (T) when
``deg_n - theta * rk < 0`` and torsion-free (F) when it is positive, with
``n = floor(theta / 2) + 1``. Theta is an exact rational or a real
quadratic surd ``a + b sqrt(d)``; every comparison is exact.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import reps
from .kzero import CurveClass, algebra, character_class, deg_rk, structure_class
from .linalg import matrix, solve_left
from .quiver import WeightedData
from .report import Report

__all__ = [
    "Theta",
    "T",
    "F",
    "UNKNOWN",
    "WallError",
    "HeartObject",
    "canonical_n",
    "classify_class",
    "classify_module",
    "verify_torsion_pair",
    "quadruple_slot",
]

T, F, UNKNOWN = "T", "F", "unknown"


class WallError(ValueError):
    """A class lies exactly on the slope-theta wall."""

    def __init__(self, dims, deg, rk, theta):
        self.dims, self.deg, self.rk, self.theta = list(dims), deg, rk, theta
        super().__init__(f"theta not in general position for this class: dims={self.dims}, deg={deg}, rk={rk}")


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_surd(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of ``a + b sqrt(d)`` by conjugate squaring."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    diff = a * a - b * b * d
    return sa if diff > 0 else (sb if diff < 0 else 0)


@dataclass(frozen=True)
class Theta:
    """``a + b sqrt(d)`` with ``d`` squarefree, or a rational when ``b == 0``."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            object.__setattr__(self, "d", 0)
        elif not _squarefree(self.d):
            raise ValueError(f"sqrt({self.d}) needs d > 1 squarefree")

    @classmethod
    def parse(cls, text: str) -> "Theta":
        """``"p/q"``, ``"sqrt(d)"``, ``"a+b*sqrt(d)"`` or ``"a-sqrt(d)"``."""
        s = text.replace(" ", "")
        if "sqrt" not in s:
            return cls(Fraction(s))
        m = re.fullmatch(r"(?:([-+]?[\d/]+)(?=[-+]))?([-+]?)([\d/]*)\*?sqrt\((\d+)\)", s)
        if not m:
            raise ValueError(f"cannot parse theta {text!r}")
        a = Fraction(m.group(1)) if m.group(1) else Fraction(0)
        b = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            b = -b
        d = int(m.group(4))
        r = math.isqrt(d)
        if r * r == d:
            return cls(a + b * r)
        return cls(a, b, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign_of(self, x: Fraction, y: Fraction) -> int:
        """Sign of ``x - y * theta``."""
        return _sign_surd(Fraction(x) - Fraction(y) * self.a, -Fraction(y) * self.b, self.d)

    def floor_half(self) -> int:
        """``floor(theta / 2)``, exactly."""
        approx = self.a / 2 + self.b / 2 * Fraction(math.isqrt(self.d * 10**40), 10**20) if self.d else self.a / 2
        k = math.floor(approx)
        # adjust so that k <= theta/2 < k + 1, i.e. sign(2k - theta) <= 0 < sign(2k + 2 - theta)
        while self.sign_of(2 * k, 1) > 0:
            k -= 1
        while self.sign_of(2 * k + 2, 1) <= 0:
            k += 1
        return k

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self):
        if self.is_rational:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.d})"


def _as_theta(theta) -> Theta:
    if isinstance(theta, Theta):
        return theta
    if isinstance(theta, str):
        return Theta.parse(theta)
    return Theta(Fraction(theta))


def canonical_n(theta) -> int:
    return _as_theta(theta).floor_half() + 1


def classify_class(data: WeightedData, theta, d: Sequence[int], n: int | None = None) -> str:
    theta = _as_theta(theta)
    if not any(d):
        raise ValueError("the zero class has no slope side")
    n = canonical_n(theta) if n is None else n
    deg, rk = deg_rk(data, n, d)
    s = theta.sign_of(deg, rk)
    if s == 0:
        raise WallError(d, deg, rk, theta)
    return T if s < 0 else F


@dataclass
class ClassifiedSummand:
    module: reps.Representation
    side: str

    def to_json(self) -> dict:
        return {"dims": list(self.module.dims), "side": self.side}


def classify_module(
    m: reps.Representation,
    theta,
    data: WeightedData | None = None,
    rng: random.Random | None = None,
    budget: int = 40,
    n: int | None = None,
) -> list[ClassifiedSummand]:
    data = data or m.algebra.data
    if m.is_zero():
        return []
    dec = reps.decompose(m, rng or random.Random(0), budget)
    out = []
    for summand, unknown in zip(dec.summands, dec.unknown):
        side = UNKNOWN if unknown else classify_class(data, theta, summand.dims, n)
        out.append(ClassifiedSummand(summand, side))
    return out


@dataclass
class HeartObject:
    """An object of ``[F, T[-1]]`` recorded by its two parts."""

    f_part: reps.Representation
    t_part: reps.Representation

    @classmethod
    def from_module(cls, m: reps.Representation, theta, rng: random.Random | None = None) -> "HeartObject":
        parts = classify_module(m, theta, rng=rng)
        if any(p.side == UNKNOWN for p in parts):
            raise ValueError("module has undecided summands")
        alg = m.algebra
        fs = [p.module for p in parts if p.side == F]
        ts = [p.module for p in parts if p.side == T]
        return cls(reps.direct_sum(*fs) if fs else reps.zero_module(alg), reps.direct_sum(*ts) if ts else reps.zero_module(alg))

    def is_valid(self, theta, rng: random.Random | None = None) -> bool:
        for part, side in ((self.f_part, F), (self.t_part, T)):
            if any(p.side != side for p in classify_module(part, theta, rng=rng)):
                return False
        return True


def _support_disjoint(a: reps.Representation, b: reps.Representation) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a.dims, b.dims))


def verify_torsion_pair(
    data: WeightedData,
    theta,
    corpus_size: int,
    seed: int,
    dim_bound: int = 3,
    flip: bool = False,
    corpus: Sequence[reps.Representation] | None = None,
) -> Report:
    """Decompose a seeded corpus, classify summands and check Hom(T, F) = 0.

    ``flip`` swaps the two sides; it exists to show that the check can fail.
    """
    if corpus_size < 1 and corpus is None:
        raise ValueError("corpus_size must be positive")
    theta = _as_theta(theta)
    alg = algebra(data)
    rng = random.Random(seed)
    if corpus is None:
        corpus = [reps.random_module(alg, dim_bound, rng) for _ in range(corpus_size)]
    t_side, f_side, unknown = [], [], 0
    for mod in corpus:
        for part in classify_module(mod, theta, data, rng):
            side = part.side
            if flip and side != UNKNOWN:
                side = F if side == T else T
            if side == T:
                t_side.append(part.module)
            elif side == F:
                f_side.append(part.module)
            else:
                unknown += 1
    t_side = _dedupe(t_side)
    f_side = _dedupe(f_side)
    violations = []
    checked = 0
    for i, a in enumerate(t_side):
        for j, b in enumerate(f_side):
            if _support_disjoint(a, b):
                continue
            checked += 1
            h = reps.hom_dim(a, b)
            if h:
                violations.append({"t": list(a.dims), "f": list(b.dims), "hom": h})
    rep = Report(case={"weights": list(data.weights), "theta": str(theta), "n": canonical_n(theta), "seed": seed})
    rep.add("corpus size", True, len(corpus))
    rep.add("summands T/F", True, [len(t_side), len(f_side)])
    # leaves with dim End/rad > 1 and no rational idempotent stay unclassified
    rep.add("undecided summands", True, unknown, note="excluded from the Hom check")
    rep.add("Hom(T, F) = 0", not violations, violations[:10], [], note=f"{checked} pairs computed")
    return rep


def _dedupe(mods: list[reps.Representation]) -> list[reps.Representation]:
    seen, out = set(), []
    for m in mods:
        key = repr(m.to_json())
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


# --- generator-level torsion quadruple ---------------------------------------

SLOT_T0, SLOT_T1 = "T0", "T1"
SLOT_GE, SLOT_LE = "Coh>=n", "Coh<=n-1"
UNDECIDABLE = "undecidable"


def _nonneg_integral(coeffs) -> bool:
    return all(c >= 0 and Fraction(c).denominator == 1 for c in coeffs)


def _in_cone(gens: list[CurveClass], c: CurveClass) -> bool:
    b = matrix([list(g.coords) for g in gens], len(c)).transpose()
    try:
        x = solve_left(b, matrix([[x] for x in c.coords], 1))
    except ValueError:
        return False
    return _nonneg_integral(Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(x.nrows()))


def quadruple_slot(data: WeightedData, n: int, c: CurveClass) -> str:
    """Which part of the torsion quadruple a generator-built class sits in.

    Structure classes ``[O_{jD_i}]`` (``0 < j < m_i``) give T0, characters
    ``[zeta(i)^a]`` (``a != 0``) give T1 and pullbacks ``[pi^* O(k)]`` give
    the two halves of the line bundle part, split at ``k = n``. A class that
    is a nonnegative integer combination inside exactly one slot gets that
    slot; anything else is undecidable.
    """
    if c.is_zero():
        return UNDECIDABLE
    vs = algebra(data).vertices
    coords = dict(zip(vs, c.coords))
    hits = []
    t0 = [structure_class(data, n, i, j) for i, m in enumerate(data.weights, start=1) for j in range(1, m)]
    if _in_cone(t0, c):
        hits.append(SLOT_T0)
    t1 = [character_class(data, n, i, a) for i, m in enumerate(data.weights, start=1) for a in range(1, m)]
    if _in_cone(t1, c):
        hits.append(SLOT_T1)
    if all(coords[v] == 0 for v in vs[2:]):
        # sum_j c_j [pi^* O(n + j)] = (R - J)[O(n)] + J [O(n+1)], R = sum c_j, J = sum j c_j
        x, y = coords["u"], coords["v"]
        if x.denominator == 1 and y.denominator == 1:
            r_tot, j_tot = x + y, y
            if r_tot >= 1 and j_tot >= 0:
                hits.append(SLOT_GE)
            if r_tot >= 1 and j_tot <= -r_tot:
                hits.append(SLOT_LE)
    return hits[0] if len(hits) == 1 else UNDECIDABLE
