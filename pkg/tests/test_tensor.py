import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpqec.tensors import (DenseTensor, MalformedNetworkError,
                           SignatureMismatchError, TensorNetwork, chain2,
                           contract, contract_bruteforce, elementary,
                           networks_equal, single_node, tensors_equal)


def test_elementary_delta():
    d = elementary("delta", 3)
    assert d[0, 0, 0] == 1 and d[1, 1, 1] == 1 and d[0, 1, 0] == 0


def test_elementary_charged_delta():
    cd = elementary("charged_delta", 3)
    assert cd[0, 0, 0] == 1 and cd[1, 1, 1] == -1 and cd[1, 0, 0] == 0


def test_elementary_z2():
    z = elementary("z2", 4)
    assert z[0, 0, 1, 1] == 1 and z[1, 0, 0, 0] == 0
    cz = elementary("charged_z2", 3)
    assert cz[1, 0, 0] == 1 and cz[0, 0, 0] == 0


def test_elementary_c():
    c = elementary("c", 3, arrows=(1, 1, -1))
    assert c[1, 1, 0] == -1
    assert c[1, 0, 1] == 1          # (1+0-1)/2 = 0
    assert c[1, 0, 0] == 0          # odd parity
    cc = elementary("charged_c", 3, arrows=(1, 1, -1))
    assert cc[1, 0, 0] == 1j
    assert cc[0, 0, 1] == -1j
    assert cc[1, 1, 0] == 0         # even parity


def test_c_requires_arrows():
    with pytest.raises(ValueError):
        elementary("c", 3)
    with pytest.raises(ValueError):
        elementary("delta", 3, arrows=(1, 1, 1))


def test_entry_value_sets():
    for kind in ("delta", "z2", "charged_delta", "charged_z2"):
        t = elementary(kind, 4)
        vals = set(np.round(t.entries.flatten().real, 12))
        assert vals <= {-1.0, 0.0, 1.0}
        assert not t.entries.imag.any()
    c = elementary("charged_c", 4, arrows=(1, -1, 1, -1))
    assert set(np.round(c.entries.flatten(), 12)) <= {0, 1, -1, 1j, -1j}


def test_h_s_u_matrices():
    h, s, u = (elementary(k).entries for k in "hsu")
    assert np.allclose(h @ h, np.eye(2), atol=1e-15)
    assert np.allclose(s @ s.conj(), np.eye(2), atol=1e-15)
    assert np.allclose(u, h @ s @ h, atol=1e-15)


def test_two_delta_chain_is_identity():
    r = contract(chain2(elementary("delta", 2), elementary("delta", 2), (1, 0)))
    assert np.allclose(r.entries, np.eye(2))


def test_open_leg_order_preserved():
    t = DenseTensor(np.arange(8, dtype=float).reshape(2, 2, 2))
    net = TensorNetwork([t], [], [(0, 2), (0, 0), (0, 1)])
    out = contract(net)
    assert np.allclose(out.entries, np.transpose(t.entries, (2, 0, 1)))


def test_malformed_network_rejected():
    t = elementary("delta", 2)
    with pytest.raises(MalformedNetworkError):
        TensorNetwork([t], [], [(0, 0)])  # dangling slot (0,1)
    with pytest.raises(MalformedNetworkError):
        TensorNetwork([t], [((0, 0), (0, 0))], [(0, 1)])


def test_signature_mismatch():
    a = single_node(elementary("delta", 2))
    b = single_node(elementary("delta", 3))
    with pytest.raises(SignatureMismatchError):
        networks_equal(a, b)


def test_perturbation_is_located():
    tol = 1e-12
    a = elementary("z2", 3)
    ent = a.entries.copy()
    ent[1, 1, 0] += 10 * tol
    ok, rep = tensors_equal(a, DenseTensor(ent), "exact", tol=tol)
    assert not ok
    assert rep["worst_index"] == (1, 1, 0)


def test_up_to_sign_and_phase_modes():
    a = elementary("delta", 3)
    ok, rep = tensors_equal(a, a.scaled(-1), "up_to_sign")
    assert ok and rep["scalar"] == -1
    assert not tensors_equal(a, a.scaled(-1), "exact")[0]
    ok, rep = tensors_equal(a, a.scaled(1j), "up_to_global_phase")
    assert ok
    assert not tensors_equal(a, a.scaled(1j), "up_to_sign")[0]
    ok, _ = tensors_equal(a, a.scaled(2.0), "up_to_scale")
    assert ok
    assert not tensors_equal(a, a.scaled(2j), "up_to_scale")[0]


def _random_network(rng, n_nodes=4):
    nodes = []
    for _ in range(n_nodes):
        r = int(rng.integers(1, 4))
        nodes.append(DenseTensor(rng.normal(size=(2,) * r)
                                 + 1j * rng.normal(size=(2,) * r)))
    slots = [(i, ax) for i, n in enumerate(nodes) for ax in range(n.rank)]
    rng.shuffle(slots)
    bonds = []
    while len(slots) >= 2 and rng.random() < 0.7:
        bonds.append((slots.pop(), slots.pop()))
    return TensorNetwork(nodes, bonds, slots)


def test_contract_order_independent_50_networks():
    rng = np.random.default_rng(42)
    for _ in range(50):
        net = _random_network(rng)
        ref = contract_bruteforce(net)
        greedy = contract(net)
        ordered = contract(net, node_order=list(rng.permutation(len(net.nodes))))
        assert np.allclose(greedy.entries, ref.entries, atol=1e-10)
        assert np.allclose(ordered.entries, ref.entries, atol=1e-10)


@given(st.integers(0, 2**30), st.integers(0, 7))
@settings(max_examples=25, deadline=None)
def test_contract_multilinear(seed, node):
    rng = np.random.default_rng(seed)
    net = _random_network(rng)
    node = node % len(net.nodes)
    lam = 0.5 + rng.random()
    scaled_nodes = [DenseTensor(t.entries * lam) if i == node else t
                    for i, t in enumerate(net.nodes)]
    net2 = TensorNetwork(scaled_nodes, net.bonds, net.open_legs)
    a = contract(net).entries
    b = contract(net2).entries
    assert np.allclose(b, lam * a, atol=1e-9)
