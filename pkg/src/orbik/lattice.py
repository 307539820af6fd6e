"""The lattice Z*tau + Z with a cyclic group of roots of unity acting on it.

Exact arithmetic in Q, Q(i) and Q(sqrt(-3)); fixed points of the group
elements via Smith normal form; the orbifold ramification data; affine
cocycles ``c_v(z) = p_v * z + q_v`` and their verification; numeric
half-period values of the Weierstrass function for the two-fold case.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

__all__ = [
    "RATIONAL",
    "GAUSSIAN",
    "EISENSTEIN",
    "QuadraticScalar",
    "OrbifoldCase",
    "LatticeVector",
    "TorsionPoint",
    "Orbit",
    "RamificationDatum",
    "AffineCocycle",
    "CocycleReport",
    "orbifold_case",
    "group_matrix",
    "published_generator",
    "smith_normal_form",
    "fixed_points",
    "derive_ramification",
    "cocycle_base",
    "cocycle_averaged",
    "base_cocycle",
    "averaged_cocycle",
    "verify_cocycle",
    "verify_invariance",
    "theta_constants",
    "half_period_values",
    "branch_points_numeric",
]

# field tags: squarefree d with omega = sqrt(d); 0 marks the rationals
RATIONAL = 0
GAUSSIAN = -1
EISENSTEIN = -3

_TAG_NAMES = {RATIONAL: "Q", GAUSSIAN: "Q(i)", EISENSTEIN: "Q(sqrt(-3))"}


@dataclass(frozen=True)
class QuadraticScalar:
    """Exact element ``a + b*sqrt(disc)`` of Q, Q(i) or Q(sqrt(-3)).

    Plain ints and Fractions are coerced into the field of the other
    operand; two scalars with different field tags never mix.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    disc: int = RATIONAL

    def __post_init__(self):
        if self.disc not in _TAG_NAMES:
            raise ValueError(f"unsupported field tag {self.disc}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.disc == RATIONAL and self.b != 0:
            raise ValueError("rational scalar with an irrational part")

    # construction helpers
    @classmethod
    def rational(cls, x, disc: int = RATIONAL) -> "QuadraticScalar":
        return cls(Fraction(x), Fraction(0), disc)

    @classmethod
    def i(cls) -> "QuadraticScalar":
        return cls(0, 1, GAUSSIAN)

    @classmethod
    def sqrt_m3(cls) -> "QuadraticScalar":
        return cls(0, 1, EISENSTEIN)

    @property
    def field_name(self) -> str:
        return _TAG_NAMES[self.disc]

    def _coerce(self, other) -> "QuadraticScalar":
        if isinstance(other, QuadraticScalar):
            if other.disc != self.disc:
                raise ValueError(
                    f"cannot mix {self.field_name} and {other.field_name} scalars"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticScalar(Fraction(other), Fraction(0), self.disc)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a + o.a, self.b + o.b, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.disc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.disc
        return QuadraticScalar(
            self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticScalar":
        return QuadraticScalar(self.a, -self.b, self.disc)

    def norm(self) -> Fraction:
        return self.a * self.a - self.disc * self.b * self.b

    def inverse(self) -> "QuadraticScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return QuadraticScalar(c.a / n, c.b / n, self.disc)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticScalar(1, 0, self.disc)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticScalar):
            return (self.a, self.b, self.disc) == (other.a, other.b, other.disc)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.disc))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __complex__(self):
        return complex(self.a) + complex(self.b) * cmath.sqrt(self.disc)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        w = {GAUSSIAN: "i", EISENSTEIN: "sqrt(-3)"}[self.disc]
        return f"{self.a} + {self.b}*{w}"

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b), self.field_name]


@dataclass(frozen=True)
class OrbifoldCase:
    """A cyclic group of order ``m`` acting on C/(Z*tau + Z) by ``zeta``."""

    m: int
    tau: QuadraticScalar
    zeta: QuadraticScalar

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("group order must be at least 2")
        one = QuadraticScalar(1, 0, self.zeta.disc)
        if self.zeta ** self.m != one:
            raise ValueError("zeta is not an m-th root of unity")
        for k in range(1, self.m):
            if self.zeta ** k == one:
                raise ValueError("zeta is not primitive")
        # the lattice must be stable: zeta*tau and zeta*1 have integer coords
        for w in (self.zeta * self.tau, self.zeta):
            mm, nn = _lattice_coords(w, self.tau)
            if mm.denominator != 1 or nn.denominator != 1:
                raise ValueError("multiplication by zeta does not preserve the lattice")

    @property
    def order(self) -> int:
        return self.m

    def embed(self, v: "LatticeVector") -> QuadraticScalar:
        """The complex number ``m*tau + n`` for ``v = (m, n)``."""
        return v.m * self.tau + v.n


def _lattice_coords(w: QuadraticScalar, tau: QuadraticScalar) -> tuple[Fraction, Fraction]:
    # w = s*tau + t with rational s, t; tau has nonzero irrational part
    s = w.b / tau.b
    t = w.a - s * tau.a
    return s, t


def orbifold_case(m: int) -> OrbifoldCase:
    """The four cases: ``m = 2`` (square lattice), 3, 4 and 6."""
    i = QuadraticScalar.i()
    rho = QuadraticScalar(Fraction(1, 2), Fraction(1, 2), EISENSTEIN)  # (1+sqrt(-3))/2
    if m == 2:
        return OrbifoldCase(2, i, QuadraticScalar(-1, 0, GAUSSIAN))
    if m == 4:
        return OrbifoldCase(4, i, i)
    if m == 3:
        return OrbifoldCase(3, rho, rho * rho)
    if m == 6:
        return OrbifoldCase(6, rho, rho)
    raise ValueError(f"no orbifold case for m={m}; expected one of 2, 3, 4, 6")


@dataclass(frozen=True, order=True)
class LatticeVector:
    """``m*tau + n`` as the integer pair ``(m, n)``."""

    m: int
    n: int

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.m + other.m, self.n + other.n)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.m, -self.n)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return self + (-other)

    def act(self, mat) -> "LatticeVector":
        (a, b), (c, d) = mat
        return LatticeVector(a * self.m + b * self.n, c * self.m + d * self.n)

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0


def det(v1: LatticeVector, v2: LatticeVector) -> int:
    return v1.m * v2.n - v1.n * v2.m


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """A point ``s*tau + t`` of C/L with rational ``s, t`` reduced into [0, 1)."""

    s: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s) % 1)
        object.__setattr__(self, "t", Fraction(self.t) % 1)

    def act(self, mat) -> "TorsionPoint":
        (a, b), (c, d) = mat
        return TorsionPoint(a * self.s + b * self.t, c * self.s + d * self.t)

    def to_json(self) -> list[int]:
        return [self.s.numerator, self.s.denominator, self.t.numerator, self.t.denominator]

    def __repr__(self):
        return f"({self.s}, {self.t})"


def group_matrix(case: OrbifoldCase, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix of multiplication by ``zeta**k`` on the basis ``(tau, 1)``.

    Columns hold the coordinates of ``zeta**k * tau`` and ``zeta**k``, so the
    matrix acts on column vectors ``(m, n)`` of lattice points.
    """
    if not 0 <= k < case.m:
        raise ValueError(f"k must lie in [0, {case.m})")
    g = case.zeta ** k
    c1 = _lattice_coords(g * case.tau, case.tau)
    c2 = _lattice_coords(g, case.tau)
    return ((int(c1[0]), int(c2[0])), (int(c1[1]), int(c2[1])))


def published_generator(case: OrbifoldCase) -> tuple[tuple[int, int], tuple[int, int]]:
    """The generator in the row-vector orientation: transpose of ``zeta**-1``.

    This is the orientation in which the published generators for m = 3
    and m = 4 are written.
    """
    (a, b), (c, d) = group_matrix(case, (-1) % case.m)
    return ((a, c), (b, d))


def _matmul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0])))
        for i in range(len(x))
    )


def smith_normal_form(a):
    """Smith normal form ``U a V = D`` of an integer matrix.

    Returns ``(D, U, V)`` with ``U``, ``V`` unimodular and ``D`` diagonal with
    non-negative entries, each dividing the next.
    """
    nr, nc = len(a), len(a[0])
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if d[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            done = True
            for i in range(t + 1, nr):
                q = d[i][t] // p
                add_row(t, i, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = d[t][j] // p
                add_col(t, j, -q)
                if d[t][j]:
                    done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if d[i][j] % p]
            if bad:
                add_row(bad[0][0], t, 1)
                continue
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return (tuple(map(tuple, d)), tuple(map(tuple, u)), tuple(map(tuple, v)))


def fixed_points(case: OrbifoldCase, k: int) -> frozenset[TorsionPoint]:
    """Points ``z`` of C/L with ``zeta**k * z = z``.

    Solves ``(M - I) z in Z^2`` through the Smith form ``U (M - I) V = D``:
    with ``z = V y`` the condition reads ``D y in Z^2``.
    """
    if k % case.m == 0:
        raise ValueError("identity fixes everything")
    if not 1 <= k < case.m:
        raise ValueError(f"k must lie in [1, {case.m})")
    mat = group_matrix(case, k)
    a = ((mat[0][0] - 1, mat[0][1]), (mat[1][0], mat[1][1] - 1))
    d, _, v = smith_normal_form(a)
    d1, d2 = d[0][0], d[1][1]
    if d1 == 0 or d2 == 0:
        raise ValueError("group element has a positive-dimensional fixed locus")
    pts = set()
    for k1, k2 in product(range(d1), range(d2)):
        y = (Fraction(k1, d1), Fraction(k2, d2))
        pts.add(TorsionPoint(v[0][0] * y[0] + v[0][1] * y[1], v[1][0] * y[0] + v[1][1] * y[1]))
    return frozenset(pts)


@dataclass(frozen=True)
class Orbit:
    representative: TorsionPoint
    multiplicity: int
    orbit_size: int
    points: tuple[TorsionPoint, ...] = field(compare=False, default=())


@dataclass(frozen=True)
class RamificationDatum:
    """Branch orbits of C/L -> P^1 with their stabilizer orders."""

    group_order: int
    orbits: tuple[Orbit, ...]

    @property
    def r(self) -> int:
        return len(self.orbits)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(o.multiplicity for o in self.orbits)

    def hurwitz_sum(self) -> Fraction:
        """``sum(1 - 1/m_i)``; equals 2 for a genus-one cover of P^1."""
        return sum((1 - Fraction(1, o.multiplicity) for o in self.orbits), Fraction(0))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "orbits": [
                {
                    "multiplicity": o.multiplicity,
                    "orbit_size": o.orbit_size,
                    "representative": o.representative.to_json(),
                }
                for o in self.orbits
            ],
        }


def derive_ramification(case: OrbifoldCase) -> RamificationDatum:
    mats = [group_matrix(case, k) for k in range(case.m)]
    special = set()
    for k in range(1, case.m):
        special |= fixed_points(case, k)
    seen = set()
    orbits = []
    for p in sorted(special):
        if p in seen:
            continue
        orbit = {p.act(g) for g in mats}
        seen |= orbit
        stab = sum(1 for g in mats if p.act(g) == p)
        if stab * len(orbit) != case.m:
            raise AssertionError("orbit-stabilizer violated")
        orbits.append(Orbit(min(orbit), stab, len(orbit), tuple(sorted(orbit))))
    orbits.sort(key=lambda o: (o.multiplicity, o.representative))
    return RamificationDatum(case.m, tuple(orbits))


# --- Fourier-Mukai cocycles ------------------------------------------------

Entry = tuple[QuadraticScalar, QuadraticScalar]


def cocycle_base(v: LatticeVector, tau: QuadraticScalar) -> Entry:
    """``c0_{m tau + n}(z) = -2 m z - m (m tau + n)`` as the pair (p, q)."""
    w = v.m * tau + v.n
    return (QuadraticScalar(-2 * v.m, 0, tau.disc), -v.m * w)


def cocycle_averaged(case: OrbifoldCase, v: LatticeVector) -> Entry:
    """Group average ``(1/|G|) sum_g c0_{g v}(g z)`` as an affine function of z."""
    p = QuadraticScalar(0, 0, case.tau.disc)
    q = QuadraticScalar(0, 0, case.tau.disc)
    for k in range(case.m):
        g = case.zeta ** k
        pk, qk = cocycle_base(v.act(group_matrix(case, k)), case.tau)
        # c0_{gv}(g z) = pk * g * z + qk
        p = p + pk * g
        q = q + qk
    return (p / case.m, q / case.m)


@dataclass(frozen=True)
class AffineCocycle:
    """A family ``v -> (p_v, q_v)`` meaning ``c_v(z) = p_v z + q_v``."""

    name: str
    tau: QuadraticScalar
    rule: Callable[[LatticeVector], Entry] = field(compare=False, repr=False)

    def __call__(self, v: LatticeVector) -> Entry:
        return self.rule(v)

    def embed(self, v: LatticeVector) -> QuadraticScalar:
        return v.m * self.tau + v.n


def base_cocycle(tau: QuadraticScalar) -> AffineCocycle:
    return AffineCocycle("c0", tau, lambda v: cocycle_base(v, tau))


def averaged_cocycle(case: OrbifoldCase) -> AffineCocycle:
    cache: dict[LatticeVector, Entry] = {}

    def rule(v):
        if v not in cache:
            cache[v] = cocycle_averaged(case, v)
        return cache[v]

    return AffineCocycle(f"averaged(m={case.m})", case.tau, rule)


@dataclass
class CocycleReport:
    name: str
    radius: int
    checked: int = 0
    violation: dict | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "radius": self.radius,
            "checked": self.checked,
            "pass": self.ok,
            "violation": self.violation,
        }


def _box(radius: int):
    rng = range(-radius, radius + 1)
    return [LatticeVector(a, b) for a in rng for b in rng]


def verify_cocycle(c: AffineCocycle, radius: int) -> CocycleReport:
    """Check ``c_{v1}(z) + c_{v2}(z + v1) - c_{v1+v2}(z) = det(v1, v2)``.

    Both sides are affine in z, so the identity is compared coefficientwise.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    rep = CocycleReport(c.name, radius)
    box = _box(radius)
    for v1 in box:
        p1, q1 = c(v1)
        w1 = c.embed(v1)
        for v2 in box:
            p2, q2 = c(v2)
            p12, q12 = c(v1 + v2)
            lin = p1 + p2 - p12
            const = q1 + p2 * w1 + q2 - q12
            rep.checked += 1
            if not lin.is_zero() or const != det(v1, v2):
                rep.violation = {
                    "v1": [v1.m, v1.n],
                    "v2": [v2.m, v2.n],
                    "z_coefficient": repr(lin),
                    "constant": repr(const),
                    "det": det(v1, v2),
                }
                return rep
    return rep


def verify_invariance(case: OrbifoldCase, c: AffineCocycle, radius: int) -> CocycleReport:
    """Check ``c_{g v}(g z) = c_v(z)`` for every group element."""
    rep = CocycleReport(f"{c.name} invariance", radius)
    for v in _box(radius):
        p, q = c(v)
        for k in range(case.m):
            g = case.zeta ** k
            pg, qg = c(v.act(group_matrix(case, k)))
            rep.checked += 1
            if pg * g != p or qg != q:
                rep.violation = {"v": [v.m, v.n], "k": k}
                return rep
    return rep


# --- numeric branch points ---------------------------------------------------


def theta_constants(tau: complex, tol: float = 1e-15) -> tuple[complex, complex, complex]:
    """Jacobi theta constants (theta2, theta3, theta4) at ``tau``.

    Series in the nome ``exp(i*pi*tau)``, i.e. in ``sqrt(q)`` with
    ``q = exp(2*pi*i*tau)``; summation stops once a term drops below tol/10.
    """
    if tau.imag <= 0:
        raise ValueError("theta series diverge for Im(tau) <= 0")
    nome = cmath.exp(1j * math.pi * tau)
    if abs(nome) >= 1:
        raise ValueError("theta series diverge for Im(tau) <= 0")
    cut = tol / 10
    t2 = 0j
    t3 = 1 + 0j
    t4 = 1 + 0j
    n = 0
    while True:
        a = nome ** ((n + 0.5) ** 2)
        t2 += 2 * a
        n += 1
        b = nome ** (n * n)
        t3 += 2 * b
        t4 += 2 * (-1) ** n * b
        if abs(a) < cut and abs(b) < cut:
            break
        if n > 10_000:
            raise RuntimeError("theta series failed to converge")
    return t2, t3, t4


def half_period_values(tau: complex, tol: float = 1e-12) -> tuple[complex, complex, complex]:
    """``(wp(1/2), wp((1+tau)/2), wp(tau/2))`` for the lattice Z + Z*tau.

    The ordering follows the classical half periods w1 = 1/2,
    w2 = w1 + w3, w3 = tau/2.
    """
    t2, t3, t4 = theta_constants(tau, tol)
    c = math.pi ** 2 / 3
    e1 = c * (t3 ** 4 + t4 ** 4)
    e2 = c * (t2 ** 4 - t4 ** 4)
    e3 = -c * (t2 ** 4 + t3 ** 4)
    return e1, e2, e3


def branch_points_numeric(case: OrbifoldCase, tol: float = 1e-10, tau: complex | None = None):
    """Branch points of C/L -> P^1 as complex numbers, ``None`` standing for infinity.

    For m = 2 these are ``(inf, e1, e2, e3)``; three branch points are
    normalized to ``(inf, 0, 1)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if case.m == 2:
        t = complex(case.tau) if tau is None else complex(tau)
        return (None, *half_period_values(t, tol))
    datum = derive_ramification(case)
    if datum.r != 3:
        raise AssertionError("expected three branch points")
    return (None, 0j, 1 + 0j)
