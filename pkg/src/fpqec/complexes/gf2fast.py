"""Bit-packed GF(2) elimination for large sparse-ish systems.

numpy uint64 words, 64 columns per word; numba-jitted elimination.  Used
for the class-functional solves whose dense uint8 form would be too slow
at sweep sizes.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except Exception:            # pragma: no cover
    def njit(*a, **k):
        def deco(f):
            return f
        return deco if not (len(a) == 1 and callable(a[0])) else a[0]


def pack_rows(mat):
    mat = np.asarray(mat, dtype=np.uint8) % 2
    rows, cols = mat.shape
    words = (cols + 63) >> 6
    out = np.zeros((rows, words), dtype=np.uint64)
    idx = np.nonzero(mat)
    for r, c in zip(*idx):
        out[r, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    return out, cols


@njit(cache=True)
def _eliminate(rows, ncols):
    """In-place forward elimination; returns pivot column per row (-1 pad)."""
    nrows = rows.shape[0]
    pivots = np.full(nrows, -1, dtype=np.int64)
    r = 0
    for c in range(ncols):
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        sel = -1
        for i in range(r, nrows):
            if rows[i, w] & bit:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for k in range(rows.shape[1]):
                tmp = rows[r, k]
                rows[r, k] = rows[sel, k]
                rows[sel, k] = tmp
        for i in range(nrows):
            if i != r and (rows[i, w] & bit):
                for k in range(rows.shape[1]):
                    rows[i, k] ^= rows[r, k]
        pivots[r] = c
        r += 1
        if r == nrows:
            break
    return pivots


def solve_gf2(mat, targets):
    """Solve mat @ x = t for each target column; returns list of solutions
    (None where unsolvable).  mat: (m, n) uint8; targets: (m, k)."""
    mat = np.asarray(mat, dtype=np.uint8) % 2
    targets = np.asarray(targets, dtype=np.uint8) % 2
    if targets.ndim == 1:
        targets = targets[:, None]
    m, n = mat.shape
    aug = np.concatenate([mat, targets], axis=1)
    packed, ncols = pack_rows(aug)
    pivots = _eliminate(packed, ncols)
    sols = []
    for j in range(targets.shape[1]):
        tcol = n + j
        x = np.zeros(n, dtype=np.uint8)
        ok = True
        for r in range(m):
            pc = pivots[r]
            if pc < 0:
                break
            if pc >= n:
                # pivot in a target column: that target is unsolvable if set
                continue
            w, b = tcol >> 6, np.uint64(1) << np.uint64(tcol & 63)
            if packed[r, w] & b:
                x[pc] = 1
        # verify (also catches pivot-in-target inconsistencies)
        if ((mat @ x) % 2 == targets[:, j]).all():
            sols.append(x)
        else:
            sols.append(None)
    return sols


def kernel_sample_gf2(mat, pairing_rows, want):
    """Find x with mat @ x = 0 and pairing_rows @ x = want (per column)."""
    big = np.vstack([np.asarray(mat, dtype=np.uint8) % 2,
                     np.asarray(pairing_rows, dtype=np.uint8) % 2])
    t = np.vstack([np.zeros((np.asarray(mat).shape[0],) + want.shape[1:],
                            dtype=np.uint8) if want.ndim > 1 else
                   np.zeros((np.asarray(mat).shape[0], 1), dtype=np.uint8),
                   want if want.ndim > 1 else want[:, None]])
    return solve_gf2(big, t)
