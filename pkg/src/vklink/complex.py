"""Finite abstract simplicial complexes.

A simplex is a strictly increasing tuple of vertex ids.  A :class:`Complex`
is an immutable, face-closed set of simplices together with display labels
for the vertex ids.  Iteration order is always canonical (lexicographic on
vertex tuples) so everything downstream is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

Simplex = tuple[int, ...]

MAX_SEARCH_VERTICES = 12


class ComplexError(ValueError):
    pass


def faces(s: Simplex, include_self: bool = True) -> list[Simplex]:
    """All nonempty faces of ``s`` in canonical order."""
    out = []
    for k in range(1, len(s) + (1 if include_self else 0)):
        out.extend(combinations(s, k))
    return sorted(out)


def facets_of(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s`` (empty for a vertex)."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def closure(simplices: Iterable[Sequence[int]]) -> frozenset[Simplex]:
    out: set[Simplex] = set()
    for s in simplices:
        t = tuple(sorted(s))
        if len(set(t)) != len(t):
            raise ComplexError(f"repeated vertex in {t}")
        if not t or t in out:
            continue
        out.update(faces(t))
    return frozenset(out)


@dataclass(frozen=True)
class Complex:
    simplices: frozenset[Simplex]
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ComplexError("duplicate vertex labels")
        for s in self.simplices:
            if any(v < 0 or v >= len(self.names) for v in s):
                raise ComplexError(f"vertex id out of range in {s}")
            if list(s) != sorted(set(s)):
                raise ComplexError(f"simplex {s} is not strictly increasing")
            for f in facets_of(s):
                if f not in self.simplices:
                    raise ComplexError(f"face {f} of {s} missing")

    @classmethod
    def from_simplices(cls, simplices: Iterable[Sequence[int]], names: Sequence[str]) -> "Complex":
        return cls(closure(simplices), tuple(names))

    @classmethod
    def from_labels(cls, simplices: Iterable[Sequence[str]], names: Sequence[str] | None = None) -> "Complex":
        simplices = [tuple(s) for s in simplices]
        if names is None:
            names = sorted({x for s in simplices for x in s})
        index = {x: i for i, x in enumerate(names)}
        return cls.from_simplices([[index[x] for x in s] for s in simplices], names)

    # --- queries -------------------------------------------------------

    @cached_property
    def ordered(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.simplices))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.ordered if len(s) == 1)

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.ordered if len(s) == k + 1]

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    @cached_property
    def maximal(self) -> tuple[Simplex, ...]:
        """Facets: simplices that are not a proper face of another."""
        covered: set[Simplex] = set()
        for s in self.simplices:
            covered.update(facets_of(s))
        return tuple(s for s in self.ordered if s not in covered)

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.names)}

    def label(self, s: Simplex) -> tuple[str, ...]:
        return tuple(self.names[v] for v in s)

    def simplex(self, *labels: str) -> Simplex:
        return tuple(sorted(self.index[x] for x in labels))

    def __contains__(self, s: object) -> bool:
        return s in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def degree_vector(self, v: int) -> tuple[int, ...]:
        """Number of incident simplices of each dimension 1..dim."""
        counts = [0] * max(self.dim, 0)
        for s in self._star[v]:
            if len(s) > 1:
                counts[len(s) - 2] += 1
        return tuple(counts)

    @cached_property
    def _star(self) -> dict[int, tuple[Simplex, ...]]:
        star: dict[int, list[Simplex]] = {v: [] for v in self.vertices}
        for s in self.ordered:
            for v in s:
                star[v].append(s)
        return {v: tuple(ss) for v, ss in star.items()}

    def star(self, v: int) -> tuple[Simplex, ...]:
        return self._star[v]

    def is_face_closed(self) -> bool:
        return all(f in self.simplices for s in self.simplices for f in facets_of(s))

    def subcomplex(self, simplices: Iterable[Simplex]) -> "Complex":
        """Closure of ``simplices`` inside this complex, same label table."""
        sub = closure(simplices)
        if not sub <= self.simplices:
            raise ComplexError("not a subcomplex")
        return Complex(sub, self.names)

    def relabel(self, mapping: Mapping[str, str]) -> "Complex":
        return Complex(self.simplices, tuple(mapping.get(x, x) for x in self.names))

    def labelled_simplices(self) -> frozenset[tuple[str, ...]]:
        return frozenset(tuple(sorted(self.label(s))) for s in self.simplices)

    def __repr__(self) -> str:
        return f"Complex(f={self.f_vector}, vertices={len(self.vertices)})"


# --- constructors ------------------------------------------------------


def empty_complex() -> Complex:
    return Complex(frozenset(), ())


def points(labels: Sequence[str]) -> Complex:
    return Complex.from_simplices([(i,) for i in range(len(labels))], labels)


def skeleton(m: int, k: int, prefix: str = "a") -> Complex:
    """The k-skeleton of the m-simplex on vertices ``a_0 .. a_m``."""
    if m < 0 or not 0 <= k <= m:
        raise ComplexError(f"need 0 <= k <= m, got m={m}, k={k}")
    names = [f"{prefix}_{i}" for i in range(m + 1)]
    simplices = [s for j in range(1, k + 2) for s in combinations(range(m + 1), j)]
    return Complex(frozenset(simplices), tuple(names))


def join(K: Complex, L: Complex) -> Complex:
    """Simplicial join; ids of ``L`` are shifted past those of ``K``."""
    overlap = set(K.names) & set(L.names)
    if overlap:
        raise ComplexError(f"join factors share vertices: {sorted(overlap)}")
    off = len(K.names)
    left = list(K.simplices) + [()]
    right = [tuple(v + off for v in t) for t in L.simplices] + [()]
    simplices = frozenset(s + t for s in left for t in right if s or t)
    return Complex(simplices, K.names + L.names)


def suspension(K: Complex, apexes: tuple[str, str] = ("a", "b")) -> Complex:
    return join(K, points(apexes))


def triple_join(m: int) -> Complex:
    """``[3]^{*m}``: the m-fold join of three-point complexes."""
    if m < 1:
        raise ComplexError("triple_join needs m >= 1")
    out = points([f"p{0}_{j}" for j in range(3)])
    for i in range(1, m):
        out = join(out, points([f"p{i}_{j}" for j in range(3)]))
    return out


def build_M_J(J: Complex, n: int, apexes: tuple[str, str, str] = ("a", "b", "c")) -> Complex:
    """``(J * {a,b}) ∪ {c * t : t an (n-2)-simplex of J}`` for an (n-1)-complex J.

    For n = 1 the second part is the lone vertex ``c``.
    """
    if n < 1 or J.dim != n - 1:
        raise ComplexError(f"J must have dimension n-1 = {n - 1}, got {J.dim}")
    a, b, c = apexes
    base = join(J, points([a, b]))
    names = base.names + (c,)
    cid = len(base.names)
    cone = [(*t, cid) for t in J.of_dim(n - 2)] if n >= 2 else []
    return Complex(base.simplices | closure(cone) | {(cid,)}, names)


def m_complex(n: int) -> Complex:
    """``M^(n)`` on vertices ``a_0..a_{2n}, a, b, c``."""
    return build_M_J(skeleton(2 * n, n - 1), n)


def join_abc(J: Complex) -> Complex:
    return join(J, points(["a", "b", "c"]))


def delete_simplices(K: Complex, S: Iterable[Simplex]) -> Complex:
    """Remove each simplex in ``S`` together with its cofaces."""
    S = [tuple(s) for s in S]
    for s in S:
        if s not in K.simplices:
            raise ComplexError(f"simplex {s} not in complex")
    doomed = {t for t in K.simplices for s in S if set(s) <= set(t)}
    return Complex(K.simplices - doomed, K.names)


# --- isomorphism search ------------------------------------------------


def _search(pattern: Complex, host: Complex, exact: bool):
    """Backtracking over injective vertex maps pattern -> host.

    Pattern vertices are assigned in id order; host candidates in id order,
    so the first hit is the lexicographically least map.  A map is accepted
    when every pattern simplex lands on a host simplex (with ``exact``,
    degree vectors must match and simplex counts agree, which makes the
    induced simplex map bijective).
    """
    pv = list(pattern.vertices)
    hv = list(host.vertices)
    if len(pv) > len(hv) or (exact and len(pv) != len(hv)):
        return
    if exact and pattern.f_vector != host.f_vector:
        return
    width = max(pattern.dim, host.dim, 0)

    def dvec(K: Complex, v: int) -> tuple[int, ...]:
        d = K.degree_vector(v)
        return d + (0,) * (width - len(d))

    pdeg = {v: dvec(pattern, v) for v in pv}
    hdeg = {v: dvec(host, v) for v in hv}
    candidates = []
    for v in pv:
        if exact:
            cands = [w for w in hv if hdeg[w] == pdeg[v]]
        else:
            cands = [w for w in hv if all(x >= y for x, y in zip(hdeg[w], pdeg[v]))]
        if not cands:
            return
        candidates.append(cands)
    # simplices of pattern to check once their last vertex is assigned
    pos = {v: i for i, v in enumerate(pv)}
    checks: list[list[Simplex]] = [[] for _ in pv]
    for s in pattern.simplices:
        if len(s) > 1:
            checks[max(pos[v] for v in s)].append(s)

    image: dict[int, int] = {}
    used: set[int] = set()
    hs = host.simplices

    def rec(i: int):
        if i == len(pv):
            yield dict(image)
            return
        v = pv[i]
        for w in candidates[i]:
            if w in used:
                continue
            image[v] = w
            if all(tuple(sorted(image[x] for x in s)) in hs for s in checks[i]):
                used.add(w)
                yield from rec(i + 1)
                used.discard(w)
            del image[v]

    yield from rec(0)


def find_isomorphism(K: Complex, L: Complex) -> dict[int, int] | None:
    """Lexicographically least vertex bijection K -> L preserving simplices."""
    if max(len(K.vertices), len(L.vertices)) > MAX_SEARCH_VERTICES:
        raise ComplexError(f"isomorphism search limited to {MAX_SEARCH_VERTICES} vertices")
    return next(_search(K, L, exact=True), None)


def subcomplex_copies(host: Complex, pattern: Complex) -> list[tuple[dict[int, int], frozenset[Simplex]]]:
    """Distinct subcomplexes of ``host`` isomorphic to ``pattern``.

    Returns one (vertex map, image simplex set) per copy, sorted by image.
    """
    if len(host.vertices) > MAX_SEARCH_VERTICES:
        raise ComplexError(f"host has more than {MAX_SEARCH_VERTICES} vertices")
    seen: dict[frozenset[Simplex], dict[int, int]] = {}
    for phi in _search(pattern, host, exact=False):
        img = frozenset(tuple(sorted(phi[v] for v in s)) for s in pattern.simplices)
        seen.setdefault(img, phi)
    return [(seen[k], k) for k in sorted(seen, key=lambda k: sorted(k))]


def count_isomorphic_subcomplexes(host: Complex, pattern: Complex) -> tuple[int, list[tuple[int, ...]]]:
    copies = subcomplex_copies(host, pattern)
    return len(copies), [tuple(sorted(phi.values())) for phi, _ in copies]


# --- serialization -----------------------------------------------------


def dumps(K: Complex) -> str:
    lines = ["# vertices: " + " ".join(K.names[v] for v in K.vertices)]
    lines += [" ".join(K.label(s)) for s in K.ordered]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Complex:
    names: list[str] | None = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vertices:"):
                names = body[len("vertices:"):].split()
            continue
        rows.append(line.split())
    if names is None:
        raise ComplexError("missing '# vertices:' header")
    index = {x: i for i, x in enumerate(names)}
    try:
        simplices = [tuple(sorted(index[x] for x in r)) for r in rows]
    except KeyError as exc:
        raise ComplexError(f"unknown vertex label {exc}") from None
    K = Complex.from_simplices(simplices, names)
    if len(K.simplices) != len(set(simplices)):
        raise ComplexError("simplex list is not face-closed")
    return K


def n_simplex_count_M(n: int) -> int:
    """Closed form for the n-simplices of M^(n): two cones over Δ^{n-1}(σ_{2n})."""
    return 2 * comb(2 * n + 1, n)
