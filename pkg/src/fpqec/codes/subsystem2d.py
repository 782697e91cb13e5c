"""Subsystem toric code: weight-3 checks on a triangular lattice.

Qubits live on the edges of an L x L periodic triangular lattice (angles
0/60/120 per site).  A period measures Z3 on the up triangles, Z3 on the
down triangles, then the two X3 halves of every vertex star (the a half
covers the 120/180/240-degree edges, the b half the rest).  Z outcomes mark
m segments at the horizontal triangle faces of the prism spacetime, X
outcomes mark e segments at the split t-edge halves, whose a/b pairs bound
little 2-cycles.
"""

from __future__ import annotations

from ..complexes import InvalidSizeError, triangle_prism3
from .schedule import Measurement, MeasurementSchedule

BUFFER_PERIODS = 2


def subsystem_toric(L, T_rounds):
    if L < 2:
        raise InvalidSizeError("triangular lattice needs L >= 2")
    if T_rounds < 1:
        raise InvalidSizeError("need at least one period")
    T_levels = T_rounds + 2 + BUFFER_PERIODS
    cx = triangle_prism3(L, T_levels, periodic_time=False)
    nbr = cx.nbr

    def q(p, ang):
        return (p[0] % L) * L * 3 + (p[1] % L) * 3 + (0, 60, 120).index(ang)

    def wrap(p):
        return (p[0] % L, p[1] % L)

    def up_tri(p, k):
        sup = (q(p, 60), q(p, 120), q(nbr(p, 120), 0))
        return Measurement("ZZZ", sup, m_cells=(cx.fid[("up", wrap(p), k + 1)],),
                           key=("Tup", wrap(p), k))

    def down_tri(p, k):
        sup = (q(p, 0), q(nbr(p, 0), 120), q(p, 60))
        return Measurement("ZZZ", sup, m_cells=(cx.fid[("down", wrap(p), k + 1)],),
                           key=("Tdown", wrap(p), k))

    def x_half(p, half, k):
        if half == "a":
            sup = (q(p, 120), q((p[0] - 1, p[1]), 0), q((p[0], p[1] - 1), 60))
        else:
            sup = (q(p, 0), q(p, 60), q((p[0] + 1, p[1] - 1), 120))
        return Measurement(
            "XXX", sup, e_cells=(cx.eid[("t", wrap(p), half, k + 1)],),
            key=("V" + half, wrap(p), k))

    sites = [(i, j) for i in range(L) for j in range(L)]

    def period_rounds(k):
        return [[up_tri(p, k) for p in sites],
                [down_tri(p, k) for p in sites],
                [x_half(p, "a", k) for p in sites],
                [x_half(p, "b", k) for p in sites]]

    rounds = []
    for k in range(T_rounds):
        rounds.extend(period_rounds(k))
    rounds.append([up_tri(p, T_rounds) for p in sites])
    rounds.append([down_tri(p, T_rounds) for p in sites])

    virtual = [[x_half(p, "a", T_rounds) for p in sites],
               [x_half(p, "b", T_rounds) for p in sites]]
    for k in range(T_rounds + 1, T_levels - 2):
        virtual.extend(period_rounds(k))

    layout = {q(p, ang): ("edge", p, ang)
              for p in sites for ang in (0, 60, 120)}
    return MeasurementSchedule(
        code="subsystem_toric", L=L, n_qubits=3 * L * L, period=4,
        rounds=rounds, virtual_rounds=virtual, spacetime=cx,
        e_dim=1, m_dim=2, qubit_layout=layout,
        meta={"T_periods": T_rounds, "slice_level": T_rounds + 1})
