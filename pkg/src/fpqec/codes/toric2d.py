"""Stabilizer toric code as a period-4 measurement schedule.

Qubits live on the edges of an L x L periodic square lattice.  One period
measures the checkerboarded plaquette Z4 operators (two rounds) and then
the checkerboarded vertex X4 operators (two rounds); the TVTV variant
interleaves them.  Nontrivial plaquette outcomes mark m segments on the xy
faces of the modified cubic spacetime lattice, nontrivial vertex outcomes
mark e segments on its t edges.
"""

from __future__ import annotations

from ..complexes import InvalidSizeError, modified_cubic3
from .schedule import Measurement, MeasurementSchedule

BUFFER_PERIODS = 2


def _qubit_ids(L):
    def xq(i, j):
        return (i % L) * L + (j % L)

    def yq(i, j):
        return L * L + (i % L) * L + (j % L)

    return xq, yq


def stabilizer_toric(L, T_rounds, ordering="TTVV"):
    """Schedule of T_rounds periods plus the final plaquette rounds."""
    if L < 2 or L % 2:
        raise InvalidSizeError("checkerboarding requires even L >= 2")
    if T_rounds < 1:
        raise InvalidSizeError("need at least one period")
    if ordering not in ("TTVV", "TVTV"):
        raise ValueError(f"unknown ordering {ordering!r}")
    # one basement level below the first measurements closes the initial
    # time boundary: chains cannot terminate there undetected
    T_levels = T_rounds + 2 + BUFFER_PERIODS
    cx = modified_cubic3((L, L, T_levels), periodic=(True, True, False))
    xq, yq = _qubit_ids(L)
    idx = cx.cell_index

    def face_cell(i, j, k):
        return idx[2][(((i % L), (j % L), k + 1), (0, 1))]

    def tedge_cell(i, j, k):
        return idx[1][(((i % L), (j % L), k + 1), (2,))]

    def plaquette(i, j, k):
        sup = (xq(i, j), yq(i + 1, j), xq(i, j + 1), yq(i, j))
        return Measurement("ZZZZ", sup, m_cells=(face_cell(i, j, k),),
                           key=("T", (i, j), k))

    def star(i, j, k):
        sup = (xq(i, j), xq(i - 1, j), yq(i, j), yq(i, j - 1))
        return Measurement("XXXX", sup, e_cells=(tedge_cell(i, j, k),),
                           key=("V", (i, j), k))

    def round_of(kind, color, k):
        out = []
        for i in range(L):
            for j in range(L):
                if (i + j) % 2 != color:
                    continue
                out.append(plaquette(i, j, k) if kind == "T" else star(i, j, k))
        return out

    def period_rounds(k):
        if ordering == "TTVV":
            seq = (("T", 0), ("T", 1), ("V", 0), ("V", 1))
        else:
            seq = (("T", 0), ("V", 0), ("T", 1), ("V", 1))
        return [round_of(kind, color, k) for kind, color in seq]

    rounds = []
    for k in range(T_rounds):
        rounds.extend(period_rounds(k))
    # final plaquette rounds: the correction slice sits after them
    rounds.append(round_of("T", 0, T_rounds))
    rounds.append(round_of("T", 1, T_rounds))

    virtual = [round_of("V", 0, T_rounds), round_of("V", 1, T_rounds)]
    for k in range(T_rounds + 1, T_levels - 2):
        virtual.extend(period_rounds(k))

    layout = {xq(i, j): ("edge", (i, j), "x") for i in range(L) for j in range(L)}
    layout.update({yq(i, j): ("edge", (i, j), "y")
                   for i in range(L) for j in range(L)})
    return MeasurementSchedule(
        code="stabilizer_toric", L=L, n_qubits=2 * L * L, period=4,
        rounds=rounds, virtual_rounds=virtual, spacetime=cx,
        e_dim=1, m_dim=2, qubit_layout=layout,
        meta={"T_periods": T_rounds, "ordering": ordering,
              "slice_level": T_rounds + 1})
