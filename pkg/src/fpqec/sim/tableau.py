"""Bit-packed stabilizer tableau with general Pauli-product measurement.

Paulis are stored as packed uint64 X/Z bit rows plus an i-power phase
(t in Z4, operator = i^t X^x Z^z; Hermitian rows have t = |x&z| + 2s).
The tableau keeps stabilizer generators paired with destabilizers, starts
either pure (|0..0>) or maximally mixed (no generators), and grows its rank
when an independent commuting product is measured, so the same object
serves state simulation and instantaneous-stabilizer-group extraction.
"""

from __future__ import annotations

import numpy as np

PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def pack_bits(bits, words):
    """Pack a 0/1 array of length <= 64*words into uint64 words."""
    out = np.zeros(words, dtype=np.uint64)
    idx = np.nonzero(np.asarray(bits))[0]
    for i in idx:
        out[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return out


def unpack_bits(row, n):
    out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        out[i] = (row[i >> 6] >> np.uint64(i & 63)) & np.uint64(1)
    return out


def _parity_rows(a):
    """Parity of popcount along axis -1 for packed uint64 arrays."""
    return (np.bitwise_count(a).sum(axis=-1) & 1).astype(np.uint8)


def pauli_from_string(pauli, support, n):
    """Packed (x, z, t) for a Hermitian Pauli product over given qubits."""
    words = (n + 63) >> 6
    xb = np.zeros(n, dtype=np.uint8)
    zb = np.zeros(n, dtype=np.uint8)
    if len(pauli) != len(support):
        raise ValueError("pauli string and support length differ")
    for ch, q in zip(pauli, support):
        if ch not in PAULI_BITS:
            raise ValueError(f"bad Pauli letter {ch!r}")
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} outside register of size {n}")
        if (xb[q] or zb[q]) and ch != "I":
            raise ValueError("repeated qubit in support")
        x, z = PAULI_BITS[ch]
        xb[q] ^= x
        zb[q] ^= z
    x = pack_bits(xb, words)
    z = pack_bits(zb, words)
    t = int(np.bitwise_count(x & z).sum()) & 3
    return x, z, t


class StabilizerTableau:
    """Stabilizer state (or subgroup) on n qubits."""

    def __init__(self, n, pure=True):
        self.n = n
        self.words = (n + 63) >> 6
        cap = n
        self.sx = np.zeros((cap, self.words), dtype=np.uint64)
        self.sz = np.zeros((cap, self.words), dtype=np.uint64)
        self.st = np.zeros(cap, dtype=np.uint8)      # i-power mod 4
        self.dx = np.zeros((cap, self.words), dtype=np.uint64)
        self.dz = np.zeros((cap, self.words), dtype=np.uint64)
        if pure:
            self.rank = n
            for q in range(n):
                self.sz[q, q >> 6] |= np.uint64(1) << np.uint64(q & 63)
                self.dx[q, q >> 6] |= np.uint64(1) << np.uint64(q & 63)
        else:
            self.rank = 0

    def copy(self):
        t = StabilizerTableau.__new__(StabilizerTableau)
        t.n, t.words, t.rank = self.n, self.words, self.rank
        for attr in ("sx", "sz", "st", "dx", "dz"):
            setattr(t, attr, getattr(self, attr).copy())
        return t

    # -- low-level helpers ---------------------------------------------------

    def _anticommute_mask(self, x, z, rows_x, rows_z, upto):
        if upto == 0:
            return np.zeros(0, dtype=np.uint8)
        return _parity_rows((x & rows_z[:upto]) ^ (z & rows_x[:upto]))

    def _mul_into_stab(self, i, x, z, t):
        """Stabilizer row i <- row_i * (x, z, t)."""
        cross = int(np.bitwise_count(self.sz[i] & x).sum()) & 1
        self.st[i] = (int(self.st[i]) + t + 2 * cross) & 3
        self.sx[i] ^= x
        self.sz[i] ^= z

    def _row_product_phase(self, rows):
        """(x, z, t) of the ordered product of stabilizer rows."""
        x = np.zeros(self.words, dtype=np.uint64)
        z = np.zeros(self.words, dtype=np.uint64)
        t = 0
        for i in rows:
            cross = int(np.bitwise_count(z & self.sx[i]).sum()) & 1
            t = (t + int(self.st[i]) + 2 * cross) & 3
            x ^= self.sx[i]
            z ^= self.sz[i]
        return x, z, t

    # -- measurement ---------------------------------------------------------

    def measure_packed(self, x, z, t, rng=None, force=None):
        """Measure the Hermitian Pauli i^t X^x Z^z; returns outcome bit.

        Outcome 0 means eigenvalue +1.  `force` pins a random outcome
        (used by noiseless reference replays).
        """
        anti = self._anticommute_mask(x, z, self.sx, self.sz, self.rank)
        hit = np.nonzero(anti)[0]
        if hit.size:
            k = int(hit[0])
            # all other anticommuting stabilizers absorb row k
            gx, gz, gt = self.sx[k].copy(), self.sz[k].copy(), int(self.st[k])
            for i in hit[1:]:
                self._mul_into_stab(int(i), gx, gz, gt)
            # destabilizers anticommuting with P absorb row k too (phase-free)
            danti = self._anticommute_mask(x, z, self.dx, self.dz, self.rank)
            danti[k] = 0
            for i in np.nonzero(danti)[0]:
                self.dx[i] ^= gx
                self.dz[i] ^= gz
            m = int(rng.integers(2)) if force is None else int(force)
            self.dx[k], self.dz[k] = gx, gz
            self.sx[k], self.sz[k] = x.copy(), z.copy()
            self.st[k] = (t + 2 * m) & 3
            return m
        # commuting: express P through the destabilizer pairing
        sel = np.nonzero(self._anticommute_mask(
            x, z, self.dx, self.dz, self.rank))[0]
        px, pz, pt = self._row_product_phase(sel)
        if np.array_equal(px, x) and np.array_equal(pz, z):
            dt = (pt - t) & 3
            if dt not in (0, 2):
                raise ValueError("non-Hermitian phase mismatch in measurement")
            return 0 if dt == 0 else 1
        # independent and commuting: extend the group (mixed state only)
        m = int(rng.integers(2)) if force is None else int(force)
        self._extend(x, z, (t + 2 * m) & 3)
        return m

    def _extend(self, x, z, t):
        """Append generator (x,z,t) with a fresh destabilizer partner."""
        r = self.rank
        if r >= self.n:
            raise ValueError("tableau rank overflow")
        self.sx[r], self.sz[r], self.st[r] = x, z, t
        # destabilizer: anticommutes with the new row, commutes with all
        # other rows (stabilizers and destabilizers).  Solve over GF(2).
        from ..complexes.homology import solve2
        rows = []
        rhs = []
        for i in range(r + 1):
            rows.append(np.concatenate([
                unpack_bits(self.sz[i], self.n),
                unpack_bits(self.sx[i], self.n)]))
            rhs.append(1 if i == r else 0)
        for i in range(r):
            rows.append(np.concatenate([
                unpack_bits(self.dz[i], self.n),
                unpack_bits(self.dx[i], self.n)]))
            rhs.append(0)
        sol = solve2(np.array(rows, dtype=np.uint8),
                     np.array(rhs, dtype=np.uint8))
        if sol is None:
            raise RuntimeError("no destabilizer partner found")
        self.dx[r] = pack_bits(sol[:self.n], self.words)
        self.dz[r] = pack_bits(sol[self.n:], self.words)
        # old destabilizers anticommuting with the new generator absorb the
        # new partner, restoring the symplectic pairing
        danti = self._anticommute_mask(x, z, self.dx, self.dz, r)
        for i in np.nonzero(danti)[0]:
            self.dx[i] ^= self.dx[r]
            self.dz[i] ^= self.dz[r]
        self.rank = r + 1

    def measure_product(self, pauli, support, rng=None, force=None):
        x, z, t = pauli_from_string(pauli, support, self.n)
        return self.measure_packed(x, z, t, rng=rng, force=force)

    def apply_pauli(self, pauli, support):
        """Conjugate the state by a Pauli: flips signs of anticommuting rows."""
        x, z, _ = pauli_from_string(pauli, support, self.n)
        anti = self._anticommute_mask(x, z, self.sx, self.sz, self.rank)
        self.st[:self.rank] = (self.st[:self.rank] + 2 * anti) & 3

    def expectation_sign(self, pauli, support):
        """For P in +-<G>: returns 0 (+1), 1 (-1); None if P not in the group."""
        x, z, t = pauli_from_string(pauli, support, self.n)
        anti = self._anticommute_mask(x, z, self.sx, self.sz, self.rank)
        if anti.any():
            return None
        sel = np.nonzero(self._anticommute_mask(
            x, z, self.dx, self.dz, self.rank))[0]
        px, pz, pt = self._row_product_phase(sel)
        if not (np.array_equal(px, x) and np.array_equal(pz, z)):
            return None
        return 0 if (pt - t) & 3 == 0 else 1

    # -- group access --------------------------------------------------------

    def stabilizer_matrix(self):
        """(rank, 2n) uint8 symplectic matrix [X | Z] of the generators."""
        out = np.zeros((self.rank, 2 * self.n), dtype=np.uint8)
        for i in range(self.rank):
            out[i, :self.n] = unpack_bits(self.sx[i], self.n)
            out[i, self.n:] = unpack_bits(self.sz[i], self.n)
        return out

    def check_invariants(self):
        """Stabilizers pairwise commute, destabilizer pairing is symplectic."""
        r = self.rank
        for i in range(r):
            for j in range(r):
                sij = (int(np.bitwise_count(self.sx[i] & self.sz[j]).sum())
                       + int(np.bitwise_count(self.sz[i] & self.sx[j]).sum())) & 1
                assert sij == 0, (i, j)
                dij = (int(np.bitwise_count(self.sx[i] & self.dz[j]).sum())
                       + int(np.bitwise_count(self.sz[i] & self.dx[j]).sum())) & 1
                assert dij == (1 if i == j else 0), (i, j)
        return True


def canonical_row_space(mat):
    """Canonical RREF form of a GF(2) symplectic row space (sign-free)."""
    from ..complexes.homology import row_space_reduce
    return row_space_reduce(mat)


def same_group(mat_a, mat_b):
    a = canonical_row_space(mat_a)
    b = canonical_row_space(mat_b)
    return a.shape == b.shape and (a == b).all()
