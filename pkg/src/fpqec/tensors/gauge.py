"""Basis-change checks relating the toric-code and honeycomb tensors.

The bond matrices G(a,b,+) of the unit-cell table (G(a,b,-) = G(a,b,+)*)
dress each toric-code tensor into the corresponding honeycomb tensor.  A
product entry like "SH" is applied with its rightmost letter adjacent to
the toric tensor.  On a bond carrying G, the edge tensor absorbs G^T and the
face tensor absorbs conj(G), which keeps the contracted network unchanged
(G G^dagger = 1 on every bond).

Uncharged dressings match the honeycomb tensor up to a positive scale
(2^(+-1) from Hadamards on four legs); charged dressings additionally pick
up a global phase, as expected.
"""

from __future__ import annotations

import numpy as np

from .core import DenseTensor, elementary, tensors_equal
from .suite import CheckResult, TOL

H = elementary("h").entries
S = elementary("s").entries
U = elementary("u").entries

_LETTER = {"H": H, "S": S, "U": U, "1": np.eye(2, dtype=complex)}

# bond table: (edge axis, face plane) -> G(a,b,+) as a letter string,
# leftmost letter outermost, rightmost letter adjacent to the toric tensor
GAUGE_TABLE = {
    ("x", "xy"): "H",
    ("x", "xz"): "SH",
    ("y", "xy"): "UH",
    ("y", "yz"): "U",
    ("z", "xz"): "S",
    ("z", "yz"): "1",
}

# honeycomb tensor types per cell (paper unit cell): arrows of the C tensors
# point along the positive x and z directions
HONEYCOMB_EDGE = {"x": "z2", "y": "c", "z": "delta"}
HONEYCOMB_FACE = {"xy": "delta", "xz": "c", "yz": "z2"}

# leg layout of the rank-4 unit-cell tensors: an edge `a` bonds to the faces
# containing it, once with + and once with - orientation per plane.
EDGE_LEGS = {
    "x": [("xy", +1), ("xy", -1), ("xz", +1), ("xz", -1)],
    "y": [("xy", +1), ("xy", -1), ("yz", +1), ("yz", -1)],
    "z": [("xz", +1), ("xz", -1), ("yz", +1), ("yz", -1)],
}
FACE_LEGS = {
    "xy": [("x", +1), ("x", -1), ("y", +1), ("y", -1)],
    "xz": [("x", +1), ("x", -1), ("z", +1), ("z", -1)],
    "yz": [("y", +1), ("y", -1), ("z", +1), ("z", -1)],
}

# arrow pattern of the honeycomb C tensors on legs ordered
# [(plane1,+), (plane1,-), (plane2,+), (plane2,-)]: the + leg of the first
# plane and the - leg of the second carry the incoming arrow; this is the
# assignment the basis change produces with a real positive scale
C_ARROWS = (1, -1, -1, 1)


def _g_matrix(letters):
    m = np.eye(2, dtype=complex)
    for ch in letters:
        m = m @ _LETTER[ch]     # rightmost letter applied first
    return m


def _honeycomb_tensor(kind, charged):
    name = ("charged_" + kind) if charged else kind
    if kind == "c":
        return elementary(name, 4, arrows=C_ARROWS)
    return elementary(name, 4)


def _toric_tensor(cell, charged):
    kind = "delta" if cell in ("x", "y", "z") else "z2"
    return elementary(("charged_" + kind) if charged else kind, 4)


def _dress_cell(cell, charged):
    """Dress the toric tensor of a unit-cell edge or face with its G's."""
    is_edge = cell in ("x", "y", "z")
    legs = EDGE_LEGS[cell] if is_edge else FACE_LEGS[cell]
    t = _toric_tensor(cell, charged)
    for ax, (other, sign) in enumerate(legs):
        key = (cell, other) if is_edge else (other, cell)
        g = _g_matrix(GAUGE_TABLE[key])
        if sign < 0:
            g = g.conj()
        mat = g.T if is_edge else g.conj().T
        t = t.dress(ax, mat)
    return t


def gauge_transform_check():
    """All basis-change identities of the honeycomb unit cell."""
    out = []
    eye = np.eye(2)
    for name, m, mc in (("H_squared", H @ H, eye),
                        ("S_Sconj", S @ S.conj(), eye),
                        ("U_Uconj", U @ U.conj(), eye)):
        dev = float(np.max(np.abs(m - mc)))
        out.append(CheckResult(name, "exact", dev < TOL, dev))

    # dressing relations: S/S exchanges Z2 and C, H exchanges delta and Z2,
    # U exchanges delta and C (the latter two up to a positive scale)
    z2 = elementary("z2", 4)
    d4 = elementary("delta", 4)
    c4 = elementary("c", 4, arrows=(1, 1, -1, -1))

    def dress_legs(t, mats):
        for ax, m in enumerate(mats):
            t = t.dress(ax, m)
        return t

    lhs = dress_legs(z2, [S.conj(), S.conj(), S, S])
    ok, rep = tensors_equal(lhs, c4, "exact")
    out.append(CheckResult("z2_S_dressing_is_c", "exact", ok,
                           rep["max_deviation"]))
    lhs = dress_legs(d4, [H, H, H, H])
    ok, rep = tensors_equal(lhs, z2, "up_to_scale")
    out.append(CheckResult("delta_H_dressing_is_z2", "up_to_scale", ok,
                           rep["max_deviation"], {"scalar": rep["scalar"]}))
    lhs = dress_legs(d4, [U.conj(), U.conj(), U, U])
    ok, rep = tensors_equal(lhs, c4, "up_to_scale")
    out.append(CheckResult("delta_U_dressing_is_c", "up_to_scale", ok,
                           rep["max_deviation"], {"scalar": rep["scalar"]}))

    # pair cancellations
    lhs = dress_legs(elementary("delta", 4), [S, S.conj(), eye, eye])
    ok, rep = tensors_equal(lhs, d4, "exact")
    out.append(CheckResult("delta_S_pair_cancel", "exact", ok,
                           rep["max_deviation"]))
    lhs = dress_legs(elementary("z2", 4), [U, U.conj(), eye, eye])
    ok, rep = tensors_equal(lhs, z2, "exact")
    out.append(CheckResult("z2_U_pair_cancel", "exact", ok,
                           rep["max_deviation"]))
    # H pair on a C tensor moves the arrow between the dressed legs
    c_in01 = elementary("c", 4, arrows=(1, 1, -1, -1))
    c_in12 = elementary("c", 4, arrows=(-1, 1, 1, -1))
    lhs = dress_legs(c_in01, [H, eye, H, eye])
    ok, rep = tensors_equal(lhs, c_in12, "up_to_scale")
    out.append(CheckResult("c_H_pair_moves_arrow", "up_to_scale", ok,
                           rep["max_deviation"], {"scalar": rep["scalar"]}))

    # the full table: every unit-cell tensor, uncharged exactly up to a
    # positive scale, charged up to a global phase
    for cell in ("x", "y", "z", "xy", "xz", "yz"):
        is_edge = cell in ("x", "y", "z")
        kind = HONEYCOMB_EDGE[cell] if is_edge else HONEYCOMB_FACE[cell]
        target = _honeycomb_tensor(kind, charged=False)
        ok, rep = tensors_equal(_dress_cell(cell, False), target,
                                "up_to_scale")
        out.append(CheckResult(f"gauge_table_{cell}", "up_to_scale", ok,
                               rep["max_deviation"], {"scalar": rep["scalar"]}))
        target = _honeycomb_tensor(kind, charged=True)
        ok, rep = tensors_equal(_dress_cell(cell, True), target,
                                "up_to_global_phase")
        out.append(CheckResult(f"gauge_table_{cell}_charged",
                               "up_to_global_phase", ok,
                               rep["max_deviation"], {"scalar": rep["scalar"]}))
    return out
