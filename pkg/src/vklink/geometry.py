"""Exact rational geometry for linear maps of simplicial complexes.

Every predicate here is decided with :class:`fractions.Fraction`
arithmetic.  Degenerate configurations are detected and reported, never
perturbed away symbolically; callers resample (see ``DEFAULT_RETRIES``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import Complex, Simplex, closure

Point = tuple[Fraction, ...]

DEFAULT_RETRIES = 64
DEFAULT_BOUND = 10**6


class GeometryError(ValueError):
    pass


class DegenerateError(GeometryError):
    """A configuration is not generic enough for the requested count."""


class RetryExhausted(GeometryError):
    pass


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")


def point(coords: Iterable) -> Point:
    return tuple(rat(c) for c in coords)


def rng_for(*key: int) -> np.random.Generator:
    """Seeded generator: numpy PCG64 driven by SeedSequence(key)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(k) for k in key])))


# --- exact linear algebra ------------------------------------------------


def solve_exact(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(A)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pr = M[col]
        inv = 1 / pr[col]
        for r in range(col + 1, n):
            f = M[r][col]
            if f:
                f *= inv
                row = M[r]
                for k in range(col, n + 1):
                    row[k] -= f * pr[k]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n] - sum(M[r][k] * x[k] for k in range(r + 1, n))
        x[r] = acc / M[r][r]
    return x


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][col]:
                f = M[i][col] / M[r][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def affinely_independent(pts: Sequence[Point]) -> bool:
    if len(pts) <= 1:
        return True
    base = pts[0]
    return matrix_rank([[x - y for x, y in zip(p, base)] for p in pts[1:]]) == len(pts) - 1


# --- point configurations ------------------------------------------------


def moment_curve(params: Sequence[int], m: int) -> list[Point]:
    params = [int(t) for t in params]
    if m < 1:
        raise GeometryError("ambient dimension must be >= 1")
    if len(set(params)) != len(params):
        raise GeometryError("moment-curve parameters must be distinct")
    return [tuple(Fraction(t) ** k for k in range(1, m + 1)) for t in params]


def general_position_check(pts: Sequence[Point], m: int) -> bool:
    """Every subset of at most m+1 points is affinely independent."""
    k = min(len(pts), m + 1)
    return all(affinely_independent(sub) for sub in combinations(pts, k))


def random_integer_points(count: int, m: int, bound: int = DEFAULT_BOUND, seed: int = 0,
                          retries: int = DEFAULT_RETRIES, attempt_offset: int = 0) -> list[Point]:
    """Uniform integer points in [-bound, bound]^m, resampled until in general position."""
    if bound < 1:
        raise GeometryError("bound must be >= 1")
    for attempt in range(attempt_offset, attempt_offset + retries):
        raw = rng_for(seed, attempt).integers(-bound, bound, size=(count, m), endpoint=True)
        pts = [point(row) for row in raw.tolist()]
        if general_position_check(pts, m):
            return pts
    raise RetryExhausted(f"no general-position sample in {retries} tries (bound {bound} too small?)")


# --- maps ----------------------------------------------------------------


@dataclass(frozen=True)
class GeometricMap:
    """Linear map of a complex: one exact point per vertex id."""

    complex: Complex
    dim: int
    points: Mapping[int, Point]

    def __post_init__(self) -> None:
        for v in self.complex.vertices:
            if v not in self.points:
                raise GeometryError(f"vertex {self.complex.names[v]} has no image")
        for v, p in self.points.items():
            if len(p) != self.dim:
                raise GeometryError(f"point for {self.complex.names[v]} has dimension {len(p)} != {self.dim}")

    @classmethod
    def from_labels(cls, K: Complex, coords: Mapping[str, Iterable], dim: int | None = None) -> "GeometricMap":
        pts = {K.index[x]: point(c) for x, c in coords.items()}
        if dim is None:
            dim = len(next(iter(pts.values())))
        return cls(K, dim, pts)

    def pts(self, s: Simplex) -> list[Point]:
        return [self.points[v] for v in s]

    def restrict(self, K: Complex) -> "GeometricMap":
        """Same coordinates on a complex sharing this map's label table."""
        pts = {K.index[x]: self.points[self.complex.index[x]] for x in (K.names[v] for v in K.vertices)}
        return GeometricMap(K, self.dim, pts)

    def by_label(self) -> dict[str, Point]:
        return {self.complex.names[v]: self.points[v] for v in self.complex.vertices}


def dumps_map(f: GeometricMap) -> str:
    lines = [f"# dim: {f.dim}"]
    for v in f.complex.vertices:
        coords = " ".join(f"{c.numerator}/{c.denominator}" for c in f.points[v])
        lines.append(f"{f.complex.names[v]} {coords}")
    return "\n".join(lines) + "\n"


def loads_map(text: str, K: Complex | None = None) -> GeometricMap:
    """Parse a map file; without ``K`` the source is the 0-skeleton of the labels."""
    coords: dict[str, Point] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, *nums = line.split()
        try:
            coords[label] = point(nums)
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"bad coordinate on line {line!r}: {exc}") from None
    if not coords:
        raise GeometryError("empty map file")
    if K is None:
        K = Complex.from_simplices([(i,) for i in range(len(coords))], list(coords))
    dims = {len(p) for p in coords.values()}
    if len(dims) != 1:
        raise GeometryError("inconsistent coordinate dimensions")
    missing = [x for x in coords if x not in K.index]
    if missing:
        raise GeometryError(f"labels not in complex: {missing}")
    return GeometricMap.from_labels(K, coords, dims.pop())


# --- intersections -------------------------------------------------------


class IntersectionKind(enum.Enum):
    EMPTY = "empty"
    TRANSVERSAL = "transversal"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class IntersectionResult:
    kind: IntersectionKind
    point: Point | None = None
    lam: tuple[Fraction, ...] | None = None
    mu: tuple[Fraction, ...] | None = None

    @property
    def transversal(self) -> bool:
        return self.kind is IntersectionKind.TRANSVERSAL


def intersect_complementary(s_pts: Sequence[Point], t_pts: Sequence[Point], strict: bool = True) -> IntersectionResult:
    """Intersect a p-simplex and a q-simplex in R^{p+q}.

    Solves for barycentric coordinates λ, μ with Σλ = Σμ = 1 and
    Σλ_i s_i = Σμ_j t_j.  With ``strict`` an affinely dependent input is an
    error; otherwise it is reported as degenerate.
    """
    m = len(s_pts[0])
    p, q = len(s_pts) - 1, len(t_pts) - 1
    if p + q != m or any(len(x) != m for x in (*s_pts, *t_pts)):
        raise GeometryError(f"dimensions do not add up: p={p}, q={q}, ambient {m}")
    A = []
    for k in range(m):
        A.append([x[k] for x in s_pts] + [-y[k] for y in t_pts])
    A.append([Fraction(1)] * (p + 1) + [Fraction(0)] * (q + 1))
    A.append([Fraction(0)] * (p + 1) + [Fraction(1)] * (q + 1))
    rhs = [Fraction(0)] * m + [Fraction(1), Fraction(1)]
    sol = solve_exact(A, rhs)
    if sol is None:
        if strict and not (affinely_independent(s_pts) and affinely_independent(t_pts)):
            raise GeometryError("input simplex is affinely dependent")
        return IntersectionResult(IntersectionKind.DEGENERATE)
    lam, mu = tuple(sol[: p + 1]), tuple(sol[p + 1:])
    if any(x < 0 for x in sol):
        return IntersectionResult(IntersectionKind.EMPTY, lam=lam, mu=mu)
    if any(x == 0 for x in sol):
        return IntersectionResult(IntersectionKind.DEGENERATE, lam=lam, mu=mu)
    pt = tuple(sum(l * x[k] for l, x in zip(lam, s_pts)) for k in range(m))
    return IntersectionResult(IntersectionKind.TRANSVERSAL, pt, lam, mu)


def _feasible(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Exact phase-one simplex: is {x >= 0 : A x = b} nonempty?  Bland's rule."""
    rows = len(A)
    nvar = len(A[0])
    T = []
    for i in range(rows):
        row = list(A[i]) + [Fraction(0)] * rows + [b[i]]
        if b[i] < 0:
            row = [-x for x in row]
        row[nvar + i] = Fraction(1)
        T.append(row)
    basis = [nvar + i for i in range(rows)]
    width = nvar + rows
    # objective: minimise the sum of artificials; reduced costs in z
    z = [-sum(T[i][j] for i in range(rows)) for j in range(width + 1)]
    for i in range(rows):
        z[nvar + i] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # unbounded direction; cannot happen with a bounded phase-one objective
        r = best[1]
        pv = T[r][enter]
        T[r] = [x / pv for x in T[r]]
        for i in range(rows):
            if i != r and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, T[r])]
        basis[r] = enter
    return z[-1] == 0


def _separated_by_axis(P: Sequence[Point], Q: Sequence[Point]) -> bool:
    for k in range(len(P[0])):
        if max(p[k] for p in P) < min(q[k] for q in Q) or max(q[k] for q in Q) < min(p[k] for p in P):
            return True
    return False


def hulls_meet_outside(P: Sequence[Point], Q: Sequence[Point], shared: Sequence[int]) -> bool:
    """Do conv(P) and conv(Q) meet anywhere except conv of the shared points?

    ``shared`` lists indices into P of points that also belong to Q.  Both
    P and Q must be affinely independent.  Decided by an exact feasibility
    problem in homogeneous barycentric weights.
    """
    outside = [i for i in range(len(P)) if i not in set(shared)]
    if not shared and _separated_by_axis(P, Q):
        return False
    m = len(P[0])
    nP, nQ = len(P), len(Q)
    A = []
    for k in range(m):
        A.append([p[k] for p in P] + [-q[k] for q in Q])
    A.append([Fraction(1)] * nP + [Fraction(-1)] * nQ)
    A.append([Fraction(1) if i in outside else Fraction(0) for i in range(nP)] + [Fraction(0)] * nQ)
    b = [Fraction(0)] * (m + 1) + [Fraction(1)]
    return _feasible(A, b)


def is_embedding(f: GeometricMap) -> bool:
    """True iff the linear map is injective on the polyhedron.

    Checked on pairs of maximal simplices: each must be affinely
    independent and any two may meet only in their common face.  That is
    equivalent to the condition on all simplex pairs, because inside a
    nondegenerate simplex barycentric coordinates are unique.
    """
    K = f.complex
    tops = list(K.maximal)
    for s in tops:
        if not affinely_independent(f.pts(s)):
            return False
    for s, t in combinations(tops, 2):
        common = set(s) & set(t)
        P = f.pts(s)
        Q = f.pts(t)
        if common and affinely_independent(f.pts(tuple(sorted(set(s) | set(t))))):
            continue
        shared = [i for i, v in enumerate(s) if v in common]
        if hulls_meet_outside(P, Q, shared):
            return False
    return True


def disjoint_pairs(K: Complex, p: int, q: int) -> list[tuple[Simplex, Simplex]]:
    out = []
    for s in K.of_dim(p):
        for t in K.of_dim(q):
            if (p < q or s < t) and set(s).isdisjoint(t):
                out.append((s, t))
    return out


def double_point_table(f: GeometricMap, n: int) -> tuple[dict[tuple[Simplex, Simplex], int], int]:
    """Transversal double points between disjoint n-simplices of a map into R^{2n}."""
    if f.dim != 2 * n:
        raise GeometryError(f"ambient dimension {f.dim} is not 2n = {2 * n}")
    table = {}
    for s, t in disjoint_pairs(f.complex, n, n):
        res = intersect_complementary(f.pts(s), f.pts(t))
        if res.kind is IntersectionKind.DEGENERATE:
            raise DegenerateError(f"non-generic pair {f.complex.label(s)} / {f.complex.label(t)}")
        table[(s, t)] = int(res.transversal)
    return table, sum(table.values())


# --- linking -------------------------------------------------------------


def _tops(simplices: Iterable[Simplex]) -> tuple[int, list[Simplex]]:
    ss = sorted({tuple(sorted(s)) for s in simplices})
    if not ss:
        raise GeometryError("empty sphere")
    d = max(len(s) for s in ss) - 1
    return d, [s for s in ss if len(s) == d + 1]


def _is_mod2_cycle(tops: list[Simplex]) -> bool:
    if len(tops[0]) == 1:
        return len(tops) % 2 == 0
    count: dict[Simplex, int] = {}
    for s in tops:
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            count[f] = count.get(f, 0) + 1
    return all(c % 2 == 0 for c in count.values())


def configuration_extent(pts: Iterable[Point]) -> tuple[Point, Fraction]:
    """Centroid and L-infinity diameter of a point set."""
    pts = list(pts)
    m = len(pts[0])
    centroid = tuple(sum(p[k] for p in pts) / len(pts) for k in range(m))
    diam = max(max(p[k] for p in pts) - min(p[k] for p in pts) for k in range(m))
    return centroid, max(diam, Fraction(1))


def apex_candidates(f: GeometricMap, seed: int = 0, retries: int = DEFAULT_RETRIES):
    """Apex policy for cone chains.

    Start from the centroid moved 2·diameter along the last axis.  With
    seed 0 the first candidate is that point unchanged; every other
    candidate adds integer jitter in [-diam, diam]^m drawn from the seed.
    """
    centroid, diam = configuration_extent(f.points.values())
    base = centroid[:-1] + (centroid[-1] + 2 * diam,)
    J = int(diam.__ceil__())
    for attempt in range(retries):
        if seed == 0 and attempt == 0:
            yield base
            continue
        jit = rng_for(seed, attempt).integers(-J, J, size=f.dim, endpoint=True).tolist()
        yield tuple(x + j for x, j in zip(base, jit))


@dataclass(frozen=True)
class LinkResult:
    value: int
    crossings: int
    apex: Point
    attempts: int


def lk2_detail(f: GeometricMap, gamma: Iterable[Simplex], delta: Iterable[Simplex], seed: int = 0,
               retries: int = DEFAULT_RETRIES, apex: Point | None = None) -> LinkResult:
    """Mod-2 linking number by coning ``gamma`` from an apex and counting hits on ``delta``."""
    p, gt = _tops(gamma)
    q, dt = _tops(delta)
    if p + q != f.dim - 1:
        raise GeometryError(f"sphere dimensions {p}, {q} do not suit R^{f.dim}")
    gv = {v for s in gt for v in s}
    dv = {v for s in dt for v in s}
    if gv & dv:
        raise GeometryError("link components share vertices")
    if not (_is_mod2_cycle(gt) and _is_mod2_cycle(dt)):
        raise GeometryError("link component is not a mod-2 cycle")
    cands = [point(apex)] if apex is not None else apex_candidates(f, seed, retries)
    for attempt, w in enumerate(cands, 1):
        total = 0
        for t in gt:
            cone = [w] + f.pts(t)
            for s in dt:
                res = intersect_complementary(cone, f.pts(s), strict=False)
                if res.kind is IntersectionKind.DEGENERATE:
                    break
                total += res.transversal
            else:
                continue
            break
        else:
            return LinkResult(total % 2, total, w, attempt)
    raise RetryExhausted("no generic apex found for the cone chain")


def lk2(f: GeometricMap, gamma: Iterable[Simplex], delta: Iterable[Simplex], seed: int = 0,
        retries: int = DEFAULT_RETRIES) -> int:
    return lk2_detail(f, gamma, delta, seed, retries).value


# --- constructions -------------------------------------------------------


def suspension_embedding(base: GeometricMap, target: Complex, apexes: tuple[str, str] = ("a", "b"),
                         heights: tuple = (1, -1), check_base: bool = True) -> GeometricMap:
    """Lift a map in R^{m-1} to R^m and put two apexes above and below it.

    Base vertices get last coordinate 0; apex ``a`` sits over the base
    centroid at height ``heights[0] > 0`` and ``b`` at ``heights[1] < 0``.
    Every simplex of ``target`` must be a base simplex or an apex joined to
    one (matched by vertex label).
    """
    ha, hb = rat(heights[0]), rat(heights[1])
    if not ha > 0 > hb:
        raise GeometryError("need h_a > 0 > h_b")
    if check_base and not is_embedding(base):
        raise GeometryError("base map is not an embedding")
    base_labels = {base.complex.label(s) for s in base.complex.simplices}
    base_labels = {tuple(sorted(x)) for x in base_labels}
    for s in target.simplices:
        labels = target.label(s)
        tips = [x for x in labels if x in apexes]
        rest = tuple(sorted(x for x in labels if x not in apexes))
        if len(tips) > 1 or (rest and rest not in base_labels):
            raise GeometryError(f"simplex {labels} is not a base simplex or a cone over one")
    lookup = base.by_label()
    centroid, _ = configuration_extent(lookup.values())
    pts = {}
    for v in target.vertices:
        x = target.names[v]
        if x == apexes[0]:
            pts[v] = centroid + (ha,)
        elif x == apexes[1]:
            pts[v] = centroid + (hb,)
        else:
            pts[v] = lookup[x] + (Fraction(0),)
    return GeometricMap(target, base.dim + 1, pts)


def labelled_simplices(K: Complex, rows: Iterable[Sequence[str]]) -> list[Simplex]:
    return sorted(closure([[K.index[x] for x in r] for r in rows]))
