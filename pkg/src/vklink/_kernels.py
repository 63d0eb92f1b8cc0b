"""Hot GF(2) elimination kernels.

Rows are packed little-endian into uint64 words: column ``j`` lives in word
``j >> 6`` at bit ``j & 63``.  Both kernels reduce ``data`` in place to
reduced row echelon form over the first ``ncols`` columns, choosing pivots in
column order (first nonzero row at or below the current rank), and return
``(rank, pivot_columns)``.  Columns at index >= ``ncols`` are carried along
but never pivoted on (used for augmented systems).
"""

import numpy as np

from ._jit import JIT_ENABLED, njit


@njit(cache=True)
def _eliminate_jit(data, ncols):
    nrows = data.shape[0]
    nwords = data.shape[1]
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = np.uint64(1) << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if data[r, w] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nwords):
                tmp = data[piv, k]
                data[piv, k] = data[rank, k]
                data[rank, k] = tmp
        for r in range(nrows):
            if r != rank and (data[r, w] & bit):
                for k in range(w, nwords):
                    data[r, k] ^= data[rank, k]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank]


def _eliminate_numpy(data, ncols):
    nrows = data.shape[0]
    pivots = []
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = one << np.uint64(col & 63)
        hits = np.flatnonzero(data[rank:, w] & bit)
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            data[[rank, piv]] = data[[piv, rank]]
        mask = (data[:, w] & bit) != 0
        mask[rank] = False
        if mask.any():
            data[mask, w:] ^= data[rank, w:]
        pivots.append(col)
        rank += 1
    return rank, np.asarray(pivots, dtype=np.int64)


def eliminate(data: np.ndarray, ncols: int, use_jit: bool | None = None):
    """Dispatch to the numba kernel when enabled, else the numpy one."""
    if use_jit is None:
        use_jit = JIT_ENABLED
    if use_jit:
        if not JIT_ENABLED:
            raise RuntimeError("numba kernel requested but JIT is disabled")
        return _eliminate_jit(data, ncols)
    return _eliminate_numpy(data, ncols)
