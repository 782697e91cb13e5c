"""Dense complex tensors with binary indices and exact network contraction.

The elementary tensors of the state-sum construction:

  delta           1 if all indices equal
  z2              1 if indices sum to 0 mod 2
  charged_delta   +1 on all-zeros, -1 on all-ones
  charged_z2      1 if indices sum to 1 mod 2
  c               (-1)^((a+b-c-...)/2) on even parity; signs from arrows
  charged_c       i^(a+b-c-...) on odd parity
  h, s, u         the 2x2 basis-change matrices, u = h s h

Arrows (per-index in/out flags) are meaningful only for the c kinds: an
incoming index contributes with +, an outgoing one with -.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

MAX_INDICES = 24


class MalformedNetworkError(ValueError):
    pass


class SignatureMismatchError(ValueError):
    pass


@dataclass
class DenseTensor:
    """A complex tensor with 2-dimensional indices."""

    entries: np.ndarray
    arrows: tuple = ()
    kind: str = ""

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (2,) * self.rank:
            raise ValueError("entries must have shape (2,)*rank")
        if self.arrows and len(self.arrows) != self.rank:
            raise ValueError("arrows length must match rank")

    @property
    def rank(self):
        return self.entries.ndim

    def __getitem__(self, idx):
        return self.entries[idx]

    def conj(self):
        """Complex conjugate; for c-kind tensors this reverses all arrows."""
        arrows = tuple(-a for a in self.arrows) if self.arrows else ()
        return DenseTensor(self.entries.conj(), arrows, self.kind)

    def scaled(self, scalar):
        return DenseTensor(self.entries * scalar, self.arrows, self.kind)

    def dress(self, leg, matrix):
        """Contract `matrix` onto one leg: new[i_leg] = sum_j M[i_leg, j] T[j]."""
        m = matrix.entries if isinstance(matrix, DenseTensor) else np.asarray(matrix)
        out = np.tensordot(m, self.entries, axes=([1], [leg]))
        out = np.moveaxis(out, 0, leg)
        return DenseTensor(out, self.arrows, self.kind)


def elementary(kind, rank=None, arrows=None) -> DenseTensor:
    """Construct one of the named state-sum tensors."""
    if kind in ("h", "s", "u"):
        if rank not in (None, 2):
            raise ValueError(f"{kind} is a 2x2 matrix")
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        s = np.array([[1, 0], [0, 1j]], dtype=complex)
        mat = {"h": h, "s": s, "u": h @ s @ h}[kind]
        return DenseTensor(mat, kind=kind)
    if rank is None or rank < 1:
        raise ValueError("rank >= 1 required")
    if kind in ("c", "charged_c"):
        if arrows is None:
            raise ValueError("c-kind tensors need arrows")
        arrows = tuple(arrows)
        if len(arrows) != rank or any(a not in (1, -1) for a in arrows):
            raise ValueError("arrows must be +-1 per index")
    elif arrows is not None:
        raise ValueError(f"arrows are only meaningful for c-kind, not {kind}")

    ent = np.zeros((2,) * rank, dtype=complex)
    for idx in itertools.product((0, 1), repeat=rank):
        tot = sum(idx)
        if kind == "delta":
            val = 1.0 if len(set(idx)) == 1 else 0.0
        elif kind == "z2":
            val = 1.0 if tot % 2 == 0 else 0.0
        elif kind == "charged_delta":
            val = 1.0 if tot == 0 else (-1.0 if tot == rank else 0.0)
        elif kind == "charged_z2":
            val = 1.0 if tot % 2 == 1 else 0.0
        elif kind == "c":
            if tot % 2 == 0:
                signed = sum(a * x for a, x in zip(arrows, idx))
                val = (-1.0) ** (signed // 2)
            else:
                val = 0.0
        elif kind == "charged_c":
            if tot % 2 == 1:
                signed = sum(a * x for a, x in zip(arrows, idx))
                val = 1j ** signed
            else:
                val = 0.0
        else:
            raise ValueError(f"unknown tensor kind {kind!r}")
        ent[idx] = val
    return DenseTensor(ent, arrows or (), kind)


class TensorNetwork:
    """Nodes, bonds between (node, index) slots, and ordered open legs."""

    def __init__(self, nodes, bonds, open_legs, scalar=1.0):
        self.nodes = list(nodes)
        self.bonds = [tuple(map(tuple, b)) for b in bonds]
        self.open_legs = [tuple(l) for l in open_legs]
        self.scalar = complex(scalar)
        self._validate()

    def _validate(self):
        used = {}
        for b, (p, q) in enumerate(self.bonds):
            for slot in (p, q):
                if slot in used:
                    raise MalformedNetworkError(f"slot {slot} used twice")
                used[slot] = ("bond", b)
        for slot in self.open_legs:
            if slot in used:
                raise MalformedNetworkError(f"slot {slot} both bonded and open")
            used[slot] = ("open", None)
        for i, node in enumerate(self.nodes):
            for ax in range(node.rank):
                if (i, ax) not in used:
                    raise MalformedNetworkError(f"dangling slot {(i, ax)}")
        if len(self.open_legs) > MAX_INDICES:
            raise MalformedNetworkError(
                f"{len(self.open_legs)} open legs, cap is {MAX_INDICES}")

    def signature(self):
        return len(self.open_legs)


def _merge_pair(live, gi, gj, blist):
    """Contract all bonds in blist between groups gi and gj (gi may equal gj);
    the result replaces gi.  Returns the updated live dict."""
    if gi == gj:
        ent, slots = live[gi]
        for (p, q) in blist:
            ax1, ax2 = slots[p], slots[q]
            ent = np.trace(ent, axis1=min(ax1, ax2), axis2=max(ax1, ax2))
            del slots[p], slots[q]
            for k in list(slots):
                a = slots[k]
                slots[k] = a - (a > ax1) - (a > ax2)
        live[gi] = (ent, slots)
        return live
    ei, si = live[gi]
    ej, sj = live[gj]
    ax_i = [si[p] if p in si else si[q] for (p, q) in blist]
    ax_j = [sj[q] if q in sj else sj[p] for (p, q) in blist]
    ent = np.tensordot(ei, ej, axes=(ax_i, ax_j)) if blist else \
        np.multiply.outer(ei, ej)
    if ent.ndim > MAX_INDICES:
        raise MalformedNetworkError("intermediate exceeds the 24-index cap")
    keep_i = [k for k, a in sorted(si.items(), key=lambda kv: kv[1])
              if a not in ax_i]
    keep_j = [k for k, a in sorted(sj.items(), key=lambda kv: kv[1])
              if a not in ax_j]
    live[gi] = (ent, {k: pos for pos, k in enumerate(keep_i + keep_j)})
    del live[gj]
    return live


def contract(network: TensorNetwork, node_order=None) -> DenseTensor:
    """Exact contraction; result indices follow network.open_legs order.

    The default pairwise order is greedy (smallest intermediate first,
    lexicographic tie-break).  `node_order` instead folds the nodes into an
    accumulator in the given sequence, which keeps intermediates small on
    lattice sweeps.  Intermediates above MAX_INDICES indices are rejected.
    The contracted value is independent of the chosen order.
    """
    live = {}
    for i, node in enumerate(network.nodes):
        live[i] = (node.entries, {(i, ax): ax for ax in range(node.rank)})
    bonds = [tuple(b) for b in network.bonds]

    def owner(slot):
        return next(g for g, (_, sl) in live.items() if slot in sl)

    def pop_bonds(gi, gj):
        out, rest = [], []
        for (p, q) in bonds:
            a, b = owner(p), owner(q)
            if {a, b} == {gi, gj} or (gi == gj and a == b == gi):
                out.append((p, q))
            else:
                rest.append((p, q))
        return out, rest

    if node_order is not None:
        order = [g for g in node_order]
        if sorted(order) != sorted(live):
            raise ValueError("node_order must list every node exactly once")
        acc = order[0]
        blist, bonds = pop_bonds(acc, acc)
        if blist:
            live = _merge_pair(live, acc, acc, blist)
        for nxt in order[1:]:
            blist, bonds = pop_bonds(acc, nxt)
            live = _merge_pair(live, acc, nxt, blist)
            blist, bonds = pop_bonds(acc, acc)
            if blist:
                live = _merge_pair(live, acc, acc, blist)
    else:
        while bonds:
            groups = {}
            for (p, q) in bonds:
                key = tuple(sorted((owner(p), owner(q))))
                groups.setdefault(key, []).append((p, q))
            best = None
            for (gi, gj), bl in groups.items():
                if gi == gj:
                    res = live[gi][0].ndim - 2 * len(bl)
                else:
                    res = live[gi][0].ndim + live[gj][0].ndim - 2 * len(bl)
                if best is None or (res, gi, gj) < best:
                    best = (res, gi, gj)
            _, gi, gj = best
            blist, bonds = pop_bonds(gi, gj)
            live = _merge_pair(live, gi, gj, blist)

    # outer product of the disconnected remainder, deterministic order
    keys = sorted(live)
    ent, slots = live[keys[0]]
    for k in keys[1:]:
        e2, s2 = live[k]
        off = ent.ndim
        ent = np.multiply.outer(ent, e2)
        for kk, a in s2.items():
            slots[kk] = a + off
    perm = [slots[leg] for leg in network.open_legs]
    if sorted(perm) != list(range(ent.ndim)):
        raise MalformedNetworkError("open legs do not match remaining indices")
    out = np.transpose(ent, perm) if perm else ent
    return DenseTensor(np.asarray(out, dtype=complex) * network.scalar)


def contract_bruteforce(network: TensorNetwork) -> DenseTensor:
    """Oracle contraction: explicit sum over all bond configurations."""
    nb = len(network.bonds)
    shape = (2,) * len(network.open_legs)
    out = np.zeros(shape, dtype=complex)
    for opens in itertools.product((0, 1), repeat=len(network.open_legs)):
        total = 0.0
        for bvals in itertools.product((0, 1), repeat=nb):
            assign = {}
            for leg, val in zip(network.open_legs, opens):
                assign[leg] = val
            for (p, q), val in zip(network.bonds, bvals):
                assign[p] = val
                assign[q] = val
            prod = 1.0 + 0j
            for i, node in enumerate(network.nodes):
                idx = tuple(assign[(i, ax)] for ax in range(node.rank))
                prod *= node.entries[idx]
                if prod == 0:
                    break
            total += prod
        out[opens] = total
    return DenseTensor(out * network.scalar)


def tensors_equal(a, b, mode="exact", tol=1e-12):
    """Compare two equal-shape tensors; returns (bool, report).

    Modes: 'exact' entrywise; 'up_to_sign' after optimal +-1 alignment;
    'up_to_global_phase' after aligning on the largest-magnitude entry
    (which also absorbs a positive scale); 'up_to_scale' like global phase
    but requires the aligning scalar to be real positive.
    """
    ea, eb = np.asarray(a.entries), np.asarray(b.entries)
    if ea.shape != eb.shape:
        raise SignatureMismatchError("tensor shapes differ")

    def report(dev, scalar):
        loc = None
        diff = np.abs(ea - scalar * eb)
        if diff.size:
            loc = np.unravel_index(np.argmax(diff), diff.shape)
        return {"max_deviation": float(dev), "scalar": complex(scalar),
                "worst_index": loc, "mode": mode}

    if mode == "exact":
        dev = np.max(np.abs(ea - eb)) if ea.size else 0.0
        return dev <= tol, report(dev, 1.0)
    if mode == "up_to_sign":
        devs = {s: np.max(np.abs(ea - s * eb)) for s in (1.0, -1.0)}
        s = min(devs, key=devs.get)
        return devs[s] <= tol, report(devs[s], s)
    if mode in ("up_to_global_phase", "up_to_scale"):
        ia = np.argmax(np.abs(ea))
        if np.abs(ea.flat[ia]) <= tol:
            dev = float(max(np.max(np.abs(ea)), np.max(np.abs(eb))))
            return dev <= tol, report(0.0 if dev <= tol else dev, 1.0)
        if np.abs(eb.flat[ia]) <= tol:
            return False, report(float(np.max(np.abs(ea - eb))), 1.0)
        scalar = ea.flat[ia] / eb.flat[ia]
        if mode == "up_to_scale":
            if abs(scalar.imag) > tol or scalar.real <= 0:
                return False, report(float(np.max(np.abs(ea - eb))), scalar)
            scalar = scalar.real
        dev = np.max(np.abs(ea - scalar * eb))
        return dev <= tol, report(dev, scalar)
    raise ValueError(f"unknown mode {mode!r}")


def networks_equal(a: TensorNetwork, b: TensorNetwork, mode="exact",
                   tol=1e-12):
    """Contract both networks and compare; see `tensors_equal`."""
    if a.signature() != b.signature():
        raise SignatureMismatchError("open-leg signatures differ")
    return tensors_equal(contract(a), contract(b), mode=mode, tol=tol)


def single_node(tensor):
    """Network wrapping one tensor with all legs open in order."""
    return TensorNetwork([tensor], [],
                         [(0, ax) for ax in range(tensor.rank)])


def chain2(t1, t2, bond_axes):
    """Two tensors with one bond; open legs: t1's rest then t2's rest."""
    a1, a2 = bond_axes
    legs = [(0, ax) for ax in range(t1.rank) if ax != a1]
    legs += [(1, ax) for ax in range(t2.rank) if ax != a2]
    return TensorNetwork([t1, t2], [((0, a1), (1, a2))], legs)
