"""Quotient deleted products and their top-degree cohomology over GF(2).

A cell of the quotient deleted product is an unordered pair ``{s, s'}`` of
vertex-disjoint simplices, stored as ``(s, s')`` with ``s < s'``
lexicographically.  Its grade is ``dim s + dim s'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .complex import Complex, Simplex, facets_of
from .z2linalg import BitMatrix, as_bits, left_kernel, rank, solve

Cell = tuple[Simplex, Simplex]


def make_cell(s: Simplex, t: Simplex) -> Cell:
    if set(s) & set(t):
        raise ValueError(f"simplices {s} and {t} are not disjoint")
    return (s, t) if s < t else (t, s)


def grade(cell: Cell) -> int:
    return len(cell[0]) + len(cell[1]) - 2


@dataclass(frozen=True, eq=False)
class QuotientDeletedComplex:
    complex: Complex
    _by_grade: dict = field(default_factory=dict, repr=False)

    @property
    def top_grade(self) -> int:
        return 2 * self.complex.dim

    def cells(self, g: int) -> list[Cell]:
        """Cells of grade ``g`` in canonical order (computed lazily)."""
        if g not in self._by_grade:
            K = self.complex
            out = []
            for p in range(max(0, g - K.dim), min(g, K.dim) + 1):
                q = g - p
                if p > q:
                    break
                left = K.of_dim(p)
                right = K.of_dim(q)
                for s in left:
                    ss = set(s)
                    for t in right:
                        if (p < q or s < t) and ss.isdisjoint(t):
                            out.append(make_cell(s, t))
            out.sort()
            self._by_grade[g] = out
        return self._by_grade[g]

    def position(self, g: int) -> dict[Cell, int]:
        key = ("pos", g)
        if key not in self._by_grade:
            self._by_grade[key] = {c: i for i, c in enumerate(self.cells(g))}
        return self._by_grade[key]

    def counts(self) -> dict[int, int]:
        return {g: len(self.cells(g)) for g in range(self.top_grade + 1)}

    def coboundary(self, g: int) -> BitMatrix:
        """Incidence matrix from grade g to grade g+1 (rows = grade g+1 cells).

        Entry (R, C) is the number of ways C is a facet-pair of R, mod 2.
        Needed in general only for checking that consecutive coboundaries
        compose to zero; the obstruction theory uses the top one.
        """
        rows = self.cells(g + 1)
        col_pos = self.position(g)
        entries = []
        for i, (s, t) in enumerate(rows):
            for f in facets_of(s):
                entries.append((i, col_pos[make_cell(f, t)]))
            for f in facets_of(t):
                entries.append((i, col_pos[make_cell(s, f)]))
        return BitMatrix.from_entries(len(rows), len(col_pos), entries)

    @cached_property
    def delta_top(self) -> BitMatrix:
        return self.coboundary(self.top_grade - 1)

    @cached_property
    def _class_functionals(self) -> BitMatrix:
        return left_kernel(self.delta_top)


def build(K: Complex) -> QuotientDeletedComplex:
    return QuotientDeletedComplex(K)


def _check_n(D: QuotientDeletedComplex, n: int) -> None:
    if D.complex.dim != n:
        raise ValueError(f"complex has dimension {D.complex.dim}, expected n = {n}")


def top_coboundary(D: QuotientDeletedComplex, n: int) -> BitMatrix:
    """δ^{2n-1}: rows are grade-2n cells, columns grade-(2n-1) cells."""
    _check_n(D, n)
    return D.delta_top


def top_cohomology_dim(K: Complex | QuotientDeletedComplex, n: int) -> int:
    D = K if isinstance(K, QuotientDeletedComplex) else build(K)
    _check_n(D, n)
    return len(D.cells(2 * n)) - rank(D.delta_top)


def dual(D: QuotientDeletedComplex, cell: Cell) -> np.ndarray:
    """Dual cochain of a top cell."""
    g = grade(cell)
    v = np.zeros(len(D.cells(g)), dtype=np.uint8)
    v[D.position(g)[make_cell(*cell)]] = 1
    return v


def class_of(D: QuotientDeletedComplex, n: int, c) -> np.ndarray:
    """Coordinates of [c] against a basis of functionals vanishing on coboundaries."""
    _check_n(D, n)
    c = as_bits(c, len(D.cells(2 * n)))
    return D._class_functionals.matvec(c)


def is_coboundary(D: QuotientDeletedComplex, n: int, c) -> bool:
    return not class_of(D, n, c).any()


def cohomologous(D: QuotientDeletedComplex, n: int, c1, c2, witness: bool = False):
    """Whether two top cochains differ by a coboundary.

    With ``witness=True`` returns ``(flag, w)`` where ``δw = c1 + c2``
    (``w`` is None when the classes differ).
    """
    _check_n(D, n)
    size = len(D.cells(2 * n))
    diff = as_bits(c1, size) ^ as_bits(c2, size)
    if not witness:
        return is_coboundary(D, n, diff)
    w = solve(D.delta_top, diff)
    return w is not None, w
