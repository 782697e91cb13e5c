"""Executable identity suite for the state-sum tensor network.

Each check instantiates a pair of small explicit networks (or a closed
lattice network) and compares them with `tensors_equal` in the mode the
identity holds in: exact, up to the stated +-1 prefactor, up to a global
phase, or up to a positive normalization scale (basis-change identities
relate tensors of different Frobenius norm, e.g. a Hadamard on every leg of
a delta produces the Z2 tensor times 2^((2-rank)/2); the scale is reported).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..complexes import BinaryChain, boundary, build_lattice
from .core import (DenseTensor, TensorNetwork, chain2, contract,
                   elementary, networks_equal, single_node, tensors_equal)

TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    mode: str
    passed: bool
    max_deviation: float
    detail: dict = field(default_factory=dict)

    def row(self):
        return {"check_name": self.name, "mode": self.mode,
                "max_deviation": self.max_deviation, "pass": self.passed}


def _result(name, mode, ok, rep, **detail):
    return CheckResult(name, mode, bool(ok), float(rep["max_deviation"]),
                       {**detail, "scalar": rep.get("scalar")})


def _cmp(name, a, b, mode="exact", tol=TOL, **detail):
    ok, rep = tensors_equal(a, b, mode=mode, tol=tol)
    return _result(name, mode, ok, rep, **detail)


# ---------------------------------------------------------------------------
# local moves

X_TENSOR = elementary("charged_z2", 2)     # the Pauli-X matrix
Z_TENSOR = elementary("charged_delta", 2)  # the Pauli-Z matrix


def check_face_split():
    """Two ways of cutting a 4-gon face into triangle pairs agree."""
    za = elementary("z2", 3)
    zb = elementary("z2", 3)
    # split along one diagonal: bond za axis2 -- zb axis0
    n1 = TensorNetwork([za, zb], [((0, 2), (1, 0))],
                       [(0, 0), (0, 1), (1, 1), (1, 2)])
    # other diagonal: same tensors, legs cyclically shifted one step
    n2 = TensorNetwork([za, zb], [((0, 2), (1, 0))],
                       [(1, 2), (0, 0), (0, 1), (1, 1)])
    ok, rep = networks_equal(n1, n2, "exact")
    r4 = single_node(elementary("z2", 4))
    ok2, rep2 = networks_equal(n1, r4, "exact")
    return _result("face_split", "exact", ok and ok2,
                   max(rep, rep2, key=lambda r: r["max_deviation"]))


def check_edge_split():
    """Dual move: splitting a 4-valent edge into two 3-valent deltas."""
    n1 = chain2(elementary("delta", 3), elementary("delta", 3), (2, 0))
    n2 = TensorNetwork([elementary("delta", 3), elementary("delta", 3)],
                       [((0, 2), (1, 0))],
                       [(1, 2), (0, 0), (0, 1), (1, 1)])
    d4 = single_node(elementary("delta", 4))
    ok, rep = networks_equal(n1, d4, "exact")
    ok2, rep2 = networks_equal(n2, d4, "exact")
    return _result("edge_split", "exact", ok and ok2,
                   max(rep, rep2, key=lambda r: r["max_deviation"]))


def check_2gon_removal():
    """A rank-2 tensor between two deltas equals a plain bond."""
    n1 = TensorNetwork(
        [elementary("delta", 3), elementary("z2", 2), elementary("delta", 3)],
        [((0, 2), (1, 0)), ((1, 1), (2, 0))],
        [(0, 0), (0, 1), (2, 1), (2, 2)])
    n2 = chain2(elementary("delta", 3), elementary("delta", 3), (2, 0))
    ok, rep = networks_equal(n1, n2, "exact")
    return _result("2gon_removal", "exact", ok, rep)


def check_bialgebra():
    """Two faces sharing two 3-valent edges equal one face and one edge."""
    za, zb = elementary("z2", 3), elementary("z2", 3)
    dc, dd = elementary("delta", 3), elementary("delta", 3)
    lhs = TensorNetwork(
        [za, zb, dc, dd],
        [((0, 0), (2, 0)), ((0, 1), (3, 0)),
         ((1, 0), (2, 1)), ((1, 1), (3, 1))],
        [(0, 2), (1, 2), (2, 2), (3, 2)])
    rhs = TensorNetwork(
        [elementary("delta", 3), elementary("z2", 3)],
        [((0, 2), (1, 2))],
        [(0, 0), (0, 1), (1, 0), (1, 1)])
    ok, rep = networks_equal(lhs, rhs, "exact")
    return _result("bialgebra", "exact", ok, rep)


def check_rank2_identity():
    eye = DenseTensor(np.eye(2, dtype=complex))
    r1 = _cmp("rank2_delta_is_identity", elementary("delta", 2), eye)
    r2 = _cmp("rank2_z2_is_identity", elementary("z2", 2), eye)
    return [r1, r2]


# ---------------------------------------------------------------------------
# anyon worldline moves (charged tensors), plus color-swapped versions


def _dressed(base, legs, matrix):
    t = base
    for leg in legs:
        t = t.dress(leg, matrix)
    return t


def check_anyon_moves():
    out = []
    z4 = elementary("z2", 4)
    d4 = elementary("delta", 4)
    cz4 = elementary("charged_z2", 4)
    cd4 = elementary("charged_delta", 4)
    # charged face tensor = face tensor with an X on one leg
    out.append(_cmp("anyon_m_absorb", cz4, _dressed(z4, [0], X_TENSOR)))
    # X pushes through a delta onto the other three legs
    out.append(_cmp("anyon_e_through_delta",
                    _dressed(d4, [0], X_TENSOR),
                    _dressed(d4, [1, 2, 3], X_TENSOR)))
    # two X segments cancel
    out.append(_cmp("anyon_m_segment_cancel",
                    DenseTensor((X_TENSOR.entries @ X_TENSOR.entries)),
                    DenseTensor(np.eye(2, dtype=complex))))
    # pushing X through a charged delta costs the stated -1
    lhs = _dressed(cd4, [0], X_TENSOR)
    rhs = _dressed(cd4, [1, 2, 3], X_TENSOR)
    ok, rep = tensors_equal(lhs, rhs, "up_to_sign")
    sign_ok = ok and abs(rep["scalar"] + 1) < TOL
    out.append(_result("anyon_e_through_charged_delta", "up_to_sign",
                       sign_ok, rep, expected_scalar=-1))
    ok_exact, rep_exact = tensors_equal(lhs, rhs, "exact")
    out.append(CheckResult("anyon_e_through_charged_delta_not_exact",
                           "exact", not ok_exact,
                           rep_exact["max_deviation"]))
    # color-swapped versions (full and empty circles exchanged)
    out.append(_cmp("anyon_e_absorb_swapped", cd4,
                    _dressed(d4, [0], Z_TENSOR)))
    out.append(_cmp("anyon_m_through_z2_swapped",
                    _dressed(z4, [0], Z_TENSOR),
                    _dressed(z4, [1, 2, 3], Z_TENSOR)))
    out.append(_cmp("anyon_e_segment_cancel_swapped",
                    DenseTensor(Z_TENSOR.entries @ Z_TENSOR.entries),
                    DenseTensor(np.eye(2, dtype=complex))))
    lhs = _dressed(cz4, [0], Z_TENSOR)
    rhs = _dressed(cz4, [1, 2, 3], Z_TENSOR)
    ok, rep = tensors_equal(lhs, rhs, "up_to_sign")
    out.append(_result("anyon_m_through_charged_z2_swapped", "up_to_sign",
                       ok and abs(rep["scalar"] + 1) < TOL, rep,
                       expected_scalar=-1))
    return out


# ---------------------------------------------------------------------------
# closed-lattice checks: cocycle violation kills the path integral


def toric_network(cplx, e_chain=None, m_cochain=None):
    """Toric-code network on a 3d complex: deltas at edges, Z2s at faces.

    e_chain marks charged deltas (1-chain), m_cochain charged Z2s
    (2-cochain).  Only sensible for complexes whose edges all have the same
    face valence as their tensor rank (plain cubic lattices).
    """
    e_chain = e_chain or frozenset()
    m_cochain = m_cochain or frozenset()
    nodes = []
    node_of_edge = {}
    node_of_face = {}
    for e in range(cplx.n_cells[1]):
        rank = len(cplx.coboundary_of(1, e))
        kind = "charged_delta" if e in e_chain else "delta"
        node_of_edge[e] = len(nodes)
        nodes.append(elementary(kind, rank))
    for f in range(cplx.n_cells[2]):
        rank = len(cplx.boundary[2][f])
        kind = "charged_z2" if f in m_cochain else "z2"
        node_of_face[f] = len(nodes)
        nodes.append(elementary(kind, rank))
    edge_slot = {e: 0 for e in node_of_edge}
    face_slot = {f: 0 for f in node_of_face}
    bonds = []
    for f in range(cplx.n_cells[2]):
        for e in sorted(cplx.boundary[2][f]):
            bonds.append(((node_of_edge[e], edge_slot[e]),
                          (node_of_face[f], face_slot[f])))
            edge_slot[e] += 1
            face_slot[f] += 1
    net = TensorNetwork(nodes, bonds, [])
    # slab-sweep order keeps intermediates small
    coord = {}
    for e, idx in node_of_edge.items():
        b = cplx.tags[1][e].get("base", (0, 0, 0))
        coord[idx] = (b[2], b[1], b[0], 0)
    for f, idx in node_of_face.items():
        b = cplx.tags[2][f].get("base", (0, 0, 0))
        coord[idx] = (b[2], b[1], b[0], 1)
    order = sorted(range(len(nodes)), key=coord.__getitem__)
    return net, order


def _zero_check_lattice():
    # open time axis keeps contraction frontiers small; the Gauss law at
    # interior vertices is unaffected
    return build_lattice("Cubic3", (2, 2, 3), periodic=(True, True, False))


def check_cocycle_violation_zero():
    from ..complexes.homology import rank2
    cplx = _zero_check_lattice()
    out = []
    net, order = toric_network(cplx)
    base = contract(net, node_order=order).entries
    # independent oracle: the value counts Z2 solutions of the face parity
    # constraints, 2^(n_edges - rank of the face-edge incidence matrix)
    inc = cplx.boundary_matrix(2).toarray().T % 2
    expect = 2.0 ** (cplx.n_cells[1] - rank2(inc))
    ok0 = abs(base - expect) < 1e-6 * expect
    out.append(CheckResult("toric_partition_function", "exact", ok0,
                           float(abs(base - expect)),
                           {"value": complex(base), "expected": expect}))
    # a single charged edge violates the cycle condition -> exactly zero
    interior_edge = next(
        i for i in range(cplx.n_cells[1])
        if len(cplx.coboundary_of(1, i)) == 4)
    net, order = toric_network(cplx, e_chain={interior_edge})
    val = contract(net, node_order=order).entries
    out.append(CheckResult("open_worldline_evaluates_to_zero", "exact",
                           abs(val) < TOL * expect, float(abs(val))))
    # three worldline legs meeting at a vertex -> zero
    v = next(i for i in range(cplx.n_cells[0])
             if len(cplx.coboundary_of(0, i)) == 6)
    legs = set(cplx.coboundary_of(0, v)[:3])
    net, order = toric_network(cplx, e_chain=legs)
    val = contract(net, node_order=order).entries
    out.append(CheckResult("three_legs_at_vertex_zero", "exact",
                           abs(val) < TOL * expect, float(abs(val))))
    # control: a contractible worldline loop keeps the full value
    loop = set(cplx.boundary[2][0])
    net, order = toric_network(cplx, e_chain=loop)
    val = contract(net, node_order=order).entries
    out.append(CheckResult("contractible_loop_nonzero", "exact",
                           abs(val - base) < 1e-6 * expect,
                           float(abs(val - base))))
    return out


def check_worldline_deformation():
    """Deforming an e loop by a face boundary: exact without m charge,
    a -1 prefactor when the crossed face carries an m defect."""
    cplx = _zero_check_lattice()
    # a small contractible m dual loop: the four faces around one edge
    e0 = next(i for i in range(cplx.n_cells[1])
              if len(cplx.coboundary_of(1, i)) == 4)
    m_loop = frozenset(cplx.coboundary_of(1, e0))
    f = sorted(m_loop)[0]
    face_b = next(i for i in range(cplx.n_cells[2]) if i != f)
    loop1 = frozenset(cplx.boundary[2][face_b])
    loop2 = loop1 ^ frozenset(cplx.boundary[2][f])
    out = []
    n1, o1 = toric_network(cplx, e_chain=loop1)
    n2, o2 = toric_network(cplx, e_chain=loop2)
    v1 = contract(n1, node_order=o1).entries
    v2 = contract(n2, node_order=o2).entries
    out.append(CheckResult("worldline_deform_exact", "exact",
                           abs(v1 - v2) < 1e-6, float(abs(v1 - v2))))
    n3, o3 = toric_network(cplx, e_chain=loop1, m_cochain=m_loop)
    n4, o4 = toric_network(cplx, e_chain=loop2, m_cochain=m_loop)
    v3 = contract(n3, node_order=o3).entries
    v4 = contract(n4, node_order=o4).entries
    ok = abs(v3 + v4) < 1e-6 and abs(v3) > 1e-6
    out.append(CheckResult("worldline_deform_sign_with_m", "up_to_sign",
                           ok, float(abs(v3 + v4)),
                           {"values": (complex(v3), complex(v4))}))
    return out


# ---------------------------------------------------------------------------
# honeycomb C-tensor relations


def check_c_tensor_relations():
    out = []
    c4 = elementary("c", 4, arrows=(1, 1, -1, -1))
    cc4 = elementary("charged_c", 4, arrows=(1, 1, -1, -1))
    cc2 = elementary("charged_c", 2, arrows=(1, -1))
    # charged C = C with a charged-C segment on one leg
    out.append(_cmp("charged_c_absorb", cc4, _dressed(c4, [0], cc2)))
    # C is invariant under dressing every leg with a Z segment
    out.append(_cmp("c_z_loop_invariance", c4,
                    _dressed(c4, [0, 1, 2, 3], Z_TENSOR)))
    # charged C times charged delta = i times charged Z2 (2-index)
    lhs = DenseTensor(cc2.entries @ Z_TENSOR.entries)
    rhs = DenseTensor(1j * X_TENSOR.entries)
    out.append(_cmp("charged_c_times_z_is_i_x", lhs, rhs))
    # two charged C bonded through their arrows cancel to a line
    prod = DenseTensor(cc2.entries @ cc2.entries)
    out.append(_cmp("charged_c_loop_cancellation", prod,
                    DenseTensor(np.eye(2, dtype=complex))))
    return out


def check_omega_cocycle():
    """The double-semion weight is a Z2 group 3-cocycle (2-3 Pachner move)."""
    from ..semion.weights import omega
    worst = 0.0
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        lhs = omega(b, c, d) * omega(a, (b + c) % 2, d) * omega(a, b, c)
        rhs = omega((a + b) % 2, c, d) * omega(a, b, (c + d) % 2)
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("omega_3cocycle", "exact", worst == 0, worst)


# ---------------------------------------------------------------------------
# driver


def invariance_suite():
    """Run every tensor-network identity check; returns a list of results."""
    results = []
    results.append(check_face_split())
    results.append(check_edge_split())
    results.append(check_2gon_removal())
    results.append(check_bialgebra())
    results.extend(check_rank2_identity())
    results.extend(check_anyon_moves())
    results.extend(check_cocycle_violation_zero())
    results.extend(check_worldline_deformation())
    results.extend(check_c_tensor_relations())
    results.append(check_omega_cocycle())
    from .gauge import gauge_transform_check
    results.extend(gauge_transform_check())
    return results
