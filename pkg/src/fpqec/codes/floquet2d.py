"""CSS and honeycomb Floquet codes on the rotated cubic spacetime lattice.

Both codes put one qubit on every triangle of the triangular lattice
obtained by projecting the cubic lattice along t = x+y+z, and measure the
same qubit pair in the same global round; they differ in the Pauli letters
(fixed per round parity for CSS, fixed per edge direction for the
honeycomb) and in the defect cells an outcome activates.

Rounds advance one lattice level each.  Even global round g measures the
level-g/2 spacetime edges (ZZ for CSS); odd rounds measure the faces based
at level (g-1)/2 (XX for CSS).  CSS outcomes activate the 2-gon of the
edge (m) or the diagonal of the face (e) on the modified lattice; honeycomb
outcomes activate three defect segments each on the unmodified lattice: the
cell itself plus the two adjacent cells of the other type along the
worldline corner rule.
"""

from __future__ import annotations

import itertools

from ..complexes import InvalidSizeError, rotated_cubic3, rotated_modified_cubic3
from ..complexes.builders import _TRI_STEPS
from .schedule import Measurement, MeasurementSchedule

BUFFER_LEVELS = 6
_DIRS = ("x", "y", "z")
_LETTER_OF_DIR = {"z": "Z", "x": "X", "y": "Y"}


def _sites(L):
    return [(i, j) for i in range(L) for j in range(L)]


def _color(p):
    return (p[0] + p[1]) % 3


def _step(p, d, L):
    s = _TRI_STEPS[d]
    return ((p[0] + s[0]) % L, (p[1] + s[1]) % L)


def _unstep(p, d, L):
    s = _TRI_STEPS[d]
    return ((p[0] - s[0]) % L, (p[1] - s[1]) % L)


def triangle_qubits(L):
    """Qubit ids: tri1(p) = {p, p+x, p+x+y} -> id(p); tri2(p) -> N + id(p)."""
    N = L * L

    def t1(p):
        return (p[0] % L) * L + (p[1] % L)

    def t2(p):
        return N + (p[0] % L) * L + (p[1] % L)

    return t1, t2


def edge_qubit_pair(p, d, L):
    """The two triangle qubits adjacent to the spatial edge (p, d)."""
    t1, t2 = triangle_qubits(L)
    if d == "x":
        return (t1(p), t2(_unstep(p, "y", L)))
    if d == "y":
        return (t2(p), t1(_unstep(p, "x", L)))
    # z edge from p to p - (1,1)
    q = _step(p, "z", L)
    return (t1(q), t2(q))


def _face_shadow(p, dd, L):
    """Spatial edge (site, dir) whose instances are the face's diagonals."""
    d3 = next(d for d in _DIRS if d not in dd)
    q12 = _step(_step(p, dd[0], L), dd[1], L)
    return q12, d3


def _edge_round_measurements(L, t, honeycomb, cx):
    out = []
    for p in _sites(L):
        if _color(p) != t % 3:
            continue
        for d in _DIRS:
            sup = edge_qubit_pair(p, d, L)
            if honeycomb:
                letter = _LETTER_OF_DIR[d]
                e_cells, m_cells = _honeycomb_edge_defects(cx, p, t, d)
            else:
                letter = "Z"
                e_cells = ()
                m_cells = (cx.gon_of_edge[(p, t, d)],)
            out.append(Measurement(letter * 2, sup, e_cells=e_cells,
                                   m_cells=m_cells, key=("E", p, t, d)))
    return out


def _face_round_measurements(L, t, honeycomb, cx):
    out = []
    for p in _sites(L):
        if _color(p) != t % 3:
            continue
        for dd in ("xy", "xz", "yz"):
            q12, d3 = _face_shadow(p, dd, L)
            sup = edge_qubit_pair(q12, d3, L)
            if honeycomb:
                letter = _LETTER_OF_DIR[d3]
                e_cells, m_cells = _honeycomb_face_defects(cx, p, t, dd)
            else:
                letter = "X"
                e_cells = (cx.diag_of_face[(p, t, dd)],)
                m_cells = ()
            out.append(Measurement(letter * 2, sup, e_cells=e_cells,
                                   m_cells=m_cells, key=("F", p, t, dd)))
    return out


def _honeycomb_edge_defects(cx, p, t, d):
    """Edge-anchored outcome: e at the edge, m at two corner-rule faces."""
    d1, d2 = sorted(x for x in _DIRS if x != d)
    e_cells = (cx.eid[(p, t, d)],)
    m_cells = []
    f2 = cx.fid.get((p, t, "".join(sorted(d + d2))))
    if f2 is not None:
        m_cells.append(f2)
    if t >= 1:
        q = _unstep(p, d1, cx.L)
        f1 = cx.fid.get((q, t - 1, "".join(sorted(d + d1))))
        if f1 is not None:
            m_cells.append(f1)
    return e_cells, tuple(m_cells)


def _honeycomb_face_defects(cx, p, t, dd):
    """Face-anchored outcome: m at the face, e along the corner path."""
    d1, d2 = dd[0], dd[1]
    m_cells = (cx.fid[(p, t, dd)],)
    e1 = cx.eid.get((p, t, d1))
    e2 = cx.eid.get((_step(p, d1, cx.L), t + 1, d2))
    e_cells = tuple(c for c in (e1, e2) if c is not None)
    return e_cells, m_cells


def _build(L, T_rounds, honeycomb):
    if L < 3 or L % 3:
        raise InvalidSizeError("triangular colors need L divisible by 3")
    if T_rounds < 1:
        raise InvalidSizeError("need at least one period")
    # recorded: T_rounds periods plus a final edge round; levels = rounds/2,
    # shifted up one color period so the initial boundary is closed
    n_recorded = 6 * T_rounds + 1
    base_level = 3
    slice_level = 3 * T_rounds + base_level
    T_levels = slice_level + 1 + BUFFER_LEVELS
    if honeycomb:
        cx = rotated_cubic3(L, T_levels, periodic_time=False)
    else:
        cx = rotated_modified_cubic3(L, T_levels, periodic_time=False)

    def round_measurements(g):
        if g % 2 == 0:
            return _edge_round_measurements(L, base_level + g // 2, honeycomb, cx)
        return _face_round_measurements(L, base_level + (g - 1) // 2,
                                        honeycomb, cx)

    rounds = [round_measurements(g) for g in range(n_recorded)]
    virtual = [round_measurements(g)
               for g in range(n_recorded, n_recorded + 8)]

    t1, t2 = triangle_qubits(L)
    layout = {}
    for p in _sites(L):
        layout[t1(p)] = ("triangle", p, 1)
        layout[t2(p)] = ("triangle", p, 2)
    return MeasurementSchedule(
        code="honeycomb_floquet" if honeycomb else "css_floquet",
        L=L, n_qubits=2 * L * L, period=3 if honeycomb else 6,
        rounds=rounds, virtual_rounds=virtual, spacetime=cx,
        e_dim=1, m_dim=2, qubit_layout=layout,
        meta={"T_periods": T_rounds, "slice_level": slice_level})


def css_floquet(L, T_rounds):
    return _build(L, T_rounds, honeycomb=False)


def honeycomb_floquet(L, T_rounds):
    return _build(L, T_rounds, honeycomb=True)
