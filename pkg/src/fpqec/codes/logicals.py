"""Logical operators of the instantaneous code and their frame propagation.

Logicals are extracted algebraically: a noiseless forced-trivial run of the
schedule on an initially maximally-mixed register yields the measured
stabilizer group at the final slice; its symplectic complement modulo the
group gives the logical pairs.  Each logical is then propagated backward
through the schedule, absorbing every measurement it anticommutes with.
The absorption bits beta (per measurement) and the anticommutation bits
alpha (per qubit Pauli per round) determine which error mechanisms and
which decoder corrections flip the observable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..complexes.homology import kernel_basis2, rank2, row_space_reduce, rref2
from ..sim.tableau import StabilizerTableau

PAULI_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def measured_group(schedule):
    """Canonical symplectic row space measured by a noiseless run."""
    from ..sim.sampler import _warmup_rounds
    tab = StabilizerTableau(schedule.n_qubits, pure=False)
    for rnd in _warmup_rounds(schedule) + list(schedule.rounds):
        for m in rnd:
            tab.measure_product(m.pauli, m.support, force=0)
    return tab.stabilizer_matrix()


def _symplectic_form(n):
    def violate(rows, v):
        # symplectic products of v against rows: x1.z2 + z1.x2
        return (rows[:, :n] @ v[n:] + rows[:, n:] @ v[:n]) % 2
    return violate


def logical_operators(schedule, group=None):
    """Symplectic-complement logical representatives, one per homology bit.

    Returns a list of (x_bits, z_bits) uint8 arrays.  Representatives are
    reduced toward pure X-type / pure Z-type where the group allows it,
    which is exact for CSS-type instantaneous groups.
    """
    n = schedule.n_qubits
    G = group if group is not None else measured_group(schedule)
    # normalizer: kernel of G * Omega
    omega = np.concatenate([G[:, n:], G[:, :n]], axis=1)
    norm = kernel_basis2(omega)
    # quotient by the group rows
    span = row_space_reduce(G)
    logicals = []
    for v in norm:
        stacked = np.vstack([span, v])
        if rank2(stacked) > rank2(span):
            logicals.append(v)
            span = row_space_reduce(stacked)
    # prefer pure-type representatives: reduce each logical by group rows
    # to kill the minority sector where possible
    out = []
    for v in logicals:
        out.append(_purify(v, G, n))
    return out


def _purify(v, G, n):
    """Reduce v modulo the group to a pure X or pure Z form if possible."""
    for sector in (0, 1):   # try killing Z part, then X part
        lo, hi = (n, 2 * n) if sector == 0 else (0, n)
        from ..complexes.homology import solve2
        sol = solve2(G[:, lo:hi].T, v[lo:hi])
        if sol is not None:
            red = (v + (sol @ G) % 2) % 2
            if not red[lo:hi].any():
                return red
    return v


def pauli_vector(letter, qubit, n):
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    xb, zb = PAULI_XZ[letter]
    x[qubit] = xb
    z[qubit] = zb
    return x, z


@dataclass
class PropagatedLogical:
    """Backward-propagated logical: per-round forms and absorption bits."""

    name: str
    x_type: bool               # has X support at the slice (flipped by Z errors)
    z_type: bool
    snapshots_x: np.ndarray    # (n_rounds+1, n) form entering each round
    snapshots_z: np.ndarray
    beta: np.ndarray           # (n_measurements,) absorbed-outcome bits

    def alpha_pauli(self, qubit, round_index, letter):
        """Does a Pauli error before `round_index` flip this observable?"""
        xb, zb = PAULI_XZ[letter]
        lx = self.snapshots_x[round_index, qubit]
        lz = self.snapshots_z[round_index, qubit]
        return int(xb & lz) ^ int(zb & lx)


def propagate_logicals(schedule, logicals=None):
    """Backward-propagate every logical through the recorded rounds."""
    n = schedule.n_qubits
    if logicals is None:
        logicals = logical_operators(schedule)
    meas = schedule.measurements()
    # per-measurement packed supports
    mx = np.zeros((len(meas), n), dtype=np.uint8)
    mz = np.zeros((len(meas), n), dtype=np.uint8)
    for j, m in enumerate(meas):
        for ch, q in zip(m.pauli, m.support):
            xb, zb = PAULI_XZ[ch]
            mx[j, q] = xb
            mz[j, q] = zb
    flat_of_round = []
    i = 0
    for rnd in schedule.rounds:
        flat_of_round.append(list(range(i, i + len(rnd))))
        i += len(rnd)

    out = []
    for li, v in enumerate(logicals):
        lx = v[:n].copy()
        lz = v[n:].copy()
        R = schedule.n_rounds
        sx = np.zeros((R + 1, n), dtype=np.uint8)
        sz = np.zeros((R + 1, n), dtype=np.uint8)
        beta = np.zeros(len(meas), dtype=np.uint8)
        sx[R], sz[R] = lx, lz
        for r in range(R - 1, -1, -1):
            for j in flat_of_round[r]:
                anti = (int(mx[j] @ lz % 2) ^ int(mz[j] @ lx % 2)) & 1
                if anti:
                    beta[j] = 1
                    lx = lx ^ mx[j]
                    lz = lz ^ mz[j]
            sx[r], sz[r] = lx, lz
        out.append(PropagatedLogical(
            name=f"L{li}",
            x_type=bool(v[:n].any()),
            z_type=bool(v[n:].any()),
            snapshots_x=sx, snapshots_z=sz, beta=beta))
    return out
