"""Floquet toric code in 3+1 dimensions: 2-body measurements on tetrahedra.

Qubits sit on the right-handed tetrahedra of the 4-colored triangulation.
One period runs eight instrument rounds: at level tau the faces based at
color tau%4 are measured as ZZ on the two right-handed tetrahedra around
the face's diagonal axis edge, then the cubes based there are measured as
the X0X1 / X1X2 pair on their three right-handed tetrahedra.  The paired
X measurements overlap on the middle qubit, so each V instrument occupies
two consecutive schedule rounds (12 schedule rounds per 8-instrument
period).  ZZ outcomes mark m segments on the pillow volumes of the modified
hypercubic spacetime, X pair outcomes mark e segments on the internal f and
g faces of the split cubes.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..complexes import InvalidSizeError, four_colored_triangulation3
from ..complexes.triangulation3d import (_AXES4, _PROJ2, Spacetime4D,
                                         _ab_edge_key, _axis_edge_key,
                                         _site_color, _site_wrap)
from .schedule import Measurement, MeasurementSchedule

BUFFER_LEVELS = 6


def _axis_key_of_pair(s, dd, L):
    """Axis-edge key of the diagonal shadow of face (s, t, dd)."""
    step = np.add(_PROJ2[dd[0]], _PROJ2[dd[1]])
    axis = int(np.nonzero(step)[0][0])
    if step[axis] > 0:
        return _axis_edge_key(s, axis, L)
    tail = list(s)
    tail[axis] -= 2
    return _axis_edge_key(tuple(tail), axis, L)


def _ab_key_of_cube(s, ddd, L):
    """A-B edge key of the main diagonal of cube (s, t, ddd)."""
    off = np.zeros(3, dtype=int)
    for d in ddd:
        off += _PROJ2[d]
    other = tuple(np.add(s, off))
    if _site_color(_site_wrap(s, L)) in (1, 3):
        return _ab_edge_key(other, s, L)
    return _ab_edge_key(s, other, L)


def floquet_toric_3d(L, T_rounds):
    """T_rounds full periods plus the slice-setting first three instruments."""
    if L < 2 or L % 2:
        raise InvalidSizeError("4-coloring requires even L >= 2")
    if T_rounds < 1:
        raise InvalidSizeError("need at least one period")
    spatial = four_colored_triangulation3(L)
    tets = spatial.tags[3]
    rh = [i for i, t in enumerate(tets) if t["right_handed"]]
    qubit_of_tet = {tet: qi for qi, tet in enumerate(rh)}
    n_qubits = len(rh)

    # adjacency: edge key -> right-handed tet qubit ids
    by_edge = {}
    for tet_idx in rh:
        for ek in tets[tet_idx]["edge_keys"]:
            by_edge.setdefault(ek, []).append(qubit_of_tet[tet_idx])

    base_level = 4
    slice_level = 4 * T_rounds + 1 + base_level
    T_levels = slice_level + 2 + BUFFER_LEVELS
    st = Spacetime4D(L, T_levels)
    cx = st.complex

    def t_round(tau):
        out = []
        for (s, t, dd) in st.face_keys:
            if t != tau:
                continue
            pair = by_edge.get(_axis_key_of_pair(s, dd, L), [])
            if len(pair) != 2:
                raise RuntimeError("face diagonal must touch 2 right tets")
            out.append(Measurement(
                "ZZ", tuple(sorted(pair)),
                m_cells=(st.vol_id[("pillow", s, t, dd)],),
                key=("T", s, t, dd)))
        return out

    def v_rounds(tau):
        first, second = [], []
        for key in st.cube_keys:
            s, t, ddd = key
            if t != tau:
                continue
            cf = st.cube_faces[key]
            trio = by_edge.get(_ab_key_of_cube(s, ddd, L), [])
            if len(trio) != 3:
                raise RuntimeError("cube diagonal must touch 3 right tets")
            line = []
            for fk in cf["i"]:
                hits = [q for q in trio
                        if _axis_key_of_pair(fk[0], fk[2], L)
                        in tets[rh[q]]["edge_keys"]]
                if len(hits) != 1:
                    raise RuntimeError("ambiguous qubit line in cube")
                line.append(hits[0])
            q0, q1, q2 = line
            first.append(Measurement("XX", (q0, q1), e_cells=(cf["f"],),
                                     key=("Vf", s, t, ddd)))
            second.append(Measurement("XX", (q1, q2), e_cells=(cf["g"],),
                                      key=("Vg", s, t, ddd)))
        return [first, second]

    def period_rounds(P):
        out = []
        for c in range(4):
            tau = base_level + 4 * P + c
            out.append(t_round(tau))
            out.extend(v_rounds(tau))
        return out

    rounds = []
    for P in range(T_rounds):
        rounds.extend(period_rounds(P))
    # slice after the I[T] round at color 1 of the next period
    tau0 = base_level + 4 * T_rounds
    rounds.append(t_round(tau0))
    rounds.extend(v_rounds(tau0))
    rounds.append(t_round(tau0 + 1))

    virtual = v_rounds(tau0 + 1)
    for tau in range(tau0 + 2, T_levels - 4):
        virtual.append(t_round(tau))
        virtual.extend(v_rounds(tau))

    layout = {qubit_of_tet[i]: ("tetrahedron", tets[i]["verts"]) for i in rh}
    return MeasurementSchedule(
        code="floquet_toric_3d", L=L, n_qubits=n_qubits, period=12,
        rounds=rounds, virtual_rounds=virtual, spacetime=cx,
        e_dim=2, m_dim=3, qubit_layout=layout,
        meta={"T_periods": T_rounds, "instrument_period": 8,
              "slice_level": slice_level, "spacetime4d": st,
              "spatial": spatial})
