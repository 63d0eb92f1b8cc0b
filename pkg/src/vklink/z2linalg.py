"""Dense bit-packed linear algebra over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import eliminate

WORD = 64


def _nwords(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def pack_rows(dense: np.ndarray, width: int | None = None) -> np.ndarray:
    """Pack a 0/1 array of shape (rows, cols) into uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    width = cols if width is None else width
    nw = _nwords(width)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").reshape(rows, nw).astype(np.uint64)


def unpack_rows(data: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(np.ascontiguousarray(data, dtype="<u8").view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols]


def as_bits(v, length: int) -> np.ndarray:
    out = np.asarray(v, dtype=np.uint8).ravel() & 1
    if out.shape != (length,):
        raise ValueError(f"expected a bit vector of length {length}, got shape {out.shape}")
    return out


@dataclass(frozen=True, eq=False)
class BitMatrix:
    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.shape != (self.rows, _nwords(self.cols)) or self.data.dtype != np.uint64:
            raise ValueError("packed data has the wrong shape or dtype")
        tail = self.cols % WORD
        if tail and self.rows and np.any(self.data[:, -1] >> np.uint64(tail)):
            raise ValueError("nonzero bits beyond the last column")

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8))
        return cls(dense.shape[0], dense.shape[1], pack_rows(dense))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "BitMatrix":
        """Build from (row, col) positions; repeated positions cancel mod 2."""
        data = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        for r, c in entries:
            data[r, c // WORD] ^= np.uint64(1) << np.uint64(c % WORD)
        return cls(rows, cols, data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.data, self.cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def column(self, j: int) -> np.ndarray:
        return ((self.data[:, j // WORD] >> np.uint64(j % WORD)) & np.uint64(1)).astype(np.uint8)

    def matvec(self, x) -> np.ndarray:
        x = as_bits(x, self.cols)
        xp = pack_rows(x[None, :], self.cols)[0]
        prod = self.data & xp
        return (np.bitwise_count(prod).sum(axis=1) & 1).astype(np.uint8)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitMatrix) and self.shape == other.shape and np.array_equal(self.data, other.data)


def rank(M: BitMatrix) -> int:
    work = M.data.copy()
    r, _ = eliminate(work, M.cols)
    return int(r)


def solve(M: BitMatrix, b) -> np.ndarray | None:
    """Some x with ``M x = b`` over GF(2), or None when inconsistent."""
    b = as_bits(b, M.rows)
    dense = np.concatenate([M.to_dense(), b[:, None]], axis=1)
    work = pack_rows(dense)
    r, piv = eliminate(work, M.cols)
    aug = (work[:, M.cols // WORD] >> np.uint64(M.cols % WORD)) & np.uint64(1)
    if np.any(aug[r:]):
        return None
    x = np.zeros(M.cols, dtype=np.uint8)
    x[piv] = aug[:r].astype(np.uint8)
    if not np.array_equal(M.matvec(x), b):
        raise AssertionError("elimination produced a wrong solution")
    return x


def kernel(M: BitMatrix) -> BitMatrix:
    """Basis of {x : M x = 0}, one basis vector per row."""
    work = M.data.copy()
    r, piv = eliminate(work, M.cols)
    dense = unpack_rows(work[:r], M.cols)
    free = sorted(set(range(M.cols)) - set(int(p) for p in piv))
    basis = np.zeros((len(free), M.cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        basis[i, piv] = dense[:, f]
    return BitMatrix.from_dense(basis) if free else BitMatrix.zeros(0, M.cols)


def left_kernel(M: BitMatrix) -> BitMatrix:
    """Basis of {y : yᵀ M = 0}; c lies in the column space of M iff Y c = 0."""
    return kernel(M.transpose())
