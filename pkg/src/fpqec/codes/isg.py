"""Instantaneous stabilizer groups and the reference groups they must match."""

from __future__ import annotations

import numpy as np

from ..complexes.homology import row_space_reduce
from ..sim.tableau import StabilizerTableau, same_group
from .floquet2d import _sites, _step, _unstep, triangle_qubits


def instantaneous_stabilizer_group(schedule, after_round):
    """Measured stabilizer group after `after_round` of a noiseless run,
    as a canonical reduced symplectic matrix [X | Z].

    The run starts maximally mixed and includes two warmup periods, so the
    group is the steady one of the schedule, not an artifact of |0..0>.
    """
    if not 0 <= after_round < schedule.n_rounds:
        raise ValueError("after_round outside the recorded window")
    from ..sim.sampler import _warmup_rounds
    tab = StabilizerTableau(schedule.n_qubits, pure=False)
    for rnd in _warmup_rounds(schedule):
        for m in rnd:
            tab.measure_product(m.pauli, m.support, force=0)
    for rnd in schedule.rounds[:after_round + 1]:
        for m in rnd:
            tab.measure_product(m.pauli, m.support, force=0)
    return row_space_reduce(tab.stabilizer_matrix())


def pauli_rows(n, terms):
    """Symplectic rows from iterables of (letter, qubit) pairs."""
    rows = np.zeros((len(terms), 2 * n), dtype=np.uint8)
    for i, ops in enumerate(terms):
        for letter, q in ops:
            if letter in ("X", "Y"):
                rows[i, q] ^= 1
            if letter in ("Z", "Y"):
                rows[i, n + q] ^= 1
    return rows


def toric_code_group(L):
    """Plaquette/vertex group of the stabilizer toric code on L x L."""
    from .toric2d import _qubit_ids
    xq, yq = _qubit_ids(L)
    terms = []
    for i in range(L):
        for j in range(L):
            terms.append([("Z", xq(i, j)), ("Z", yq(i + 1, j)),
                          ("Z", xq(i, j + 1)), ("Z", yq(i, j))])
            terms.append([("X", xq(i, j)), ("X", xq(i - 1, j)),
                          ("X", yq(i, j)), ("X", yq(i, j - 1))])
    return pauli_rows(2 * L * L, terms)


def _triangles_around(p, L):
    """The six triangle qubits around vertex p."""
    t1, t2 = triangle_qubits(L)
    return [t1(p), t2(p), t1(_unstep(p, "x", L)), t2(_unstep(p, "y", L)),
            t1(_step(p, "z", L)), t2(_step(p, "z", L))]


def css_slice_group(L, edge_colors):
    """Toric-code group of the CSS Floquet spatial slice after a ZZ round.

    `edge_colors` is the measured color pair (c, c+1): Z pairs on those
    edges plus Z hexagons at the remaining color's vertices, X stars at the
    vertices of both measured colors.
    """
    from .floquet2d import edge_qubit_pair, _color, _DIRS
    c0, c1 = edge_colors
    other = ({0, 1, 2} - {c0, c1}).pop()
    terms = []
    for p in _sites(L):
        if _color(p) == c0:
            for d in _DIRS:
                q1, q2 = edge_qubit_pair(p, d, L)
                terms.append([("Z", q1), ("Z", q2)])
        if _color(p) == other:
            terms.append([("Z", q) for q in _triangles_around(p, L)])
        if _color(p) in (c0, c1):
            terms.append([("X", q) for q in _triangles_around(p, L)])
    return pauli_rows(2 * L * L, terms)
