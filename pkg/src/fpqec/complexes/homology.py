"""Z2 homology of a cell complex by Gaussian elimination over GF(2).

Provides bases of cycle/boundary spaces, homology representatives together
with dual cocycle representatives (intersection pairing = identity), and a
class-vector evaluator used by the decoders to judge logical sectors.
"""

from __future__ import annotations

import numpy as np


def rref2(mat):
    """Reduced row echelon form over GF(2).

    Returns (rref matrix, pivot column list).  Input is not modified.
    """
    m = (np.array(mat, dtype=np.uint8) % 2)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hit = np.nonzero(m[r:, c])[0]
        if hit.size == 0:
            continue
        i = r + hit[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        sel = np.nonzero(m[:, c])[0]
        sel = sel[sel != r]
        m[sel] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank2(mat):
    if mat.size == 0:
        return 0
    return len(rref2(mat)[1])


def kernel_basis2(mat):
    """Basis of the right kernel of `mat` over GF(2), rows are basis vectors."""
    m = np.array(mat, dtype=np.uint8) % 2
    rows, cols = m.shape
    r, pivots = rref2(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = np.zeros(cols, dtype=np.uint8)
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            if r[i, fcol]:
                v[pc] = 1
        basis.append(v)
    return np.array(basis, dtype=np.uint8).reshape(len(basis), cols)


def row_space_reduce(mat):
    """Canonical (RREF, zero rows dropped) form of a GF(2) row space."""
    if np.asarray(mat).size == 0:
        return np.zeros((0, np.asarray(mat).shape[-1] if np.asarray(mat).ndim == 2
                         else 0), dtype=np.uint8)
    r, pivots = rref2(mat)
    return r[:len(pivots)]


def solve2(mat, target):
    """One solution x of mat @ x = target over GF(2), or None."""
    m = np.array(mat, dtype=np.uint8) % 2
    t = np.array(target, dtype=np.uint8) % 2
    rows, cols = m.shape
    aug = np.concatenate([m, t.reshape(-1, 1)], axis=1)
    r, pivots = rref2(aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x


def homology_basis(cplx, k):
    """Z2 homology basis of H_k plus dual cocycle basis of H^k.

    Returns (cycle_reps, cocycle_reps): two uint8 arrays of shape
    (rank, n_k_cells) such that every cycle rep is a k-cycle, every cocycle
    rep a k-cocycle, and pairing(rep_i, dual_j) = delta_ij.
    """
    n_k = cplx.n_cells[k]
    dk = cplx.boundary_matrix(k).toarray() % 2 if k >= 1 else \
        np.zeros((0, n_k), dtype=np.uint8)
    if k < cplx.dim:
        dk1 = cplx.boundary_matrix(k + 1).toarray() % 2
    else:
        dk1 = np.zeros((n_k, 0), dtype=np.uint8)

    cycles = kernel_basis2(dk)                    # Z_k
    boundaries = row_space_reduce(dk1.T)          # B_k (rows)
    # quotient: cycle reps independent modulo boundaries
    reps = []
    span = boundaries.copy()
    for v in cycles:
        stacked = np.vstack([span, v]) if span.size else v.reshape(1, -1)
        if rank2(stacked) > rank2(span):
            reps.append(v)
            span = row_space_reduce(stacked)
    reps = np.array(reps, dtype=np.uint8).reshape(len(reps), n_k)

    # dual side: k-cocycles = kernel of dk1^T; quotient by coboundaries,
    # which span the row space of the k-th boundary matrix
    cocycles = kernel_basis2(dk1.T)
    cobound = row_space_reduce(dk) if k >= 1 else \
        np.zeros((0, n_k), dtype=np.uint8)
    duals = []
    span = cobound.copy()
    for v in cocycles:
        stacked = np.vstack([span, v]) if span.size else v.reshape(1, -1)
        if rank2(stacked) > rank2(span):
            duals.append(v)
            span = row_space_reduce(stacked)
    duals = np.array(duals, dtype=np.uint8).reshape(len(duals), n_k)

    if len(reps) != len(duals):
        raise RuntimeError("homology/cohomology rank mismatch")
    if len(reps) == 0:
        return reps, duals

    # normalize: make pairing(rep_i, dual_j) the identity matrix over GF(2)
    P = (reps @ duals.T) % 2
    Pinv = _inverse2(P)
    duals = (Pinv.T @ duals) % 2
    assert ((reps @ duals.T) % 2 == np.eye(len(reps), dtype=np.uint8)).all()
    return reps.astype(np.uint8), duals.astype(np.uint8)


def _inverse2(P):
    n = P.shape[0]
    aug = np.concatenate([P % 2, np.eye(n, dtype=np.uint8)], axis=1)
    r, pivots = rref2(aug)
    if pivots[:n] != list(range(n)):
        raise RuntimeError("intersection pairing is degenerate")
    return r[:n, n:]


def class_vector(chain_indicator, duals):
    """Z2 class coordinates of a cycle with respect to dual cocycle reps."""
    v = np.asarray(chain_indicator, dtype=np.uint8) % 2
    return (duals @ v) % 2


def smith_rank_oracle(cplx, k):
    """Independent homology rank via ranks of the two boundary matrices.

    rank H_k = n_k - rank d_k - rank d_{k+1}; used as a cross-check oracle
    against `homology_basis`.
    """
    n_k = cplx.n_cells[k]
    rk = rank2(cplx.boundary_matrix(k).toarray()) if k >= 1 else 0
    rk1 = rank2(cplx.boundary_matrix(k + 1).toarray()) if k < cplx.dim else 0
    return n_k - rk - rk1
