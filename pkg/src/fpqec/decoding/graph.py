"""Detection events and decoding-graph construction.

A sector (e or m) of a schedule has detector sites: the boundary cells of
the e chain dimension or the coboundary cells of the m dimension, excluding
the open sites whose parity cells extend past the recording window.  Error
mechanisms connect one or two sites (or a site and the open time boundary);
the decoding graph on a shot's detection events carries shortest-path
weights through the mechanism graph with weight -log(p/(1-p)) per
mechanism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

from ..complexes import BinaryChain, validate_chain
from ..sim.noise import NoiseModel
from ..sim.sampler import build_mechanisms


def detection_events(defect: BinaryChain, kind: str, open_sites=()):
    """Support of the violation chain, minus open-boundary sites."""
    viol = validate_chain(defect, kind)
    return sorted(set(viol.support) - set(open_sites))


@dataclass
class DecodingGraph:
    """Complete graph on a shot's detection events with path weights."""

    nodes: list                   # site ids of the events
    weights: np.ndarray           # (k, k) pairwise path weights
    boundary: np.ndarray | None   # (k,) weights to the open boundary
    paths: object = None          # SectorGeometry for fragment recovery

    def edge_correction(self, i, j):
        return self.paths.path_mechanisms(self.nodes[i],
                                          self.nodes[j] if j >= 0 else -1)


class SectorGeometry:
    """Precomputed per (schedule, sector, noise): sites, mechanism graph,
    all-pairs distances, and shortest-path predecessors."""

    def __init__(self, schedule, sector, noise, d_cut=None):
        self.schedule = schedule
        self.sector = sector
        self.noise = noise if isinstance(noise, NoiseModel) else NoiseModel(*noise)
        cx = schedule.spacetime
        dim = schedule.e_dim if sector == "e" else schedule.m_dim
        self.dim = dim
        if sector == "e":
            inc = cx.boundary_matrix(dim)          # sites x cells
            n_sites = cx.n_cells[dim - 1]
        else:
            inc = cx.boundary_matrix(dim + 1).T    # coboundary
            n_sites = cx.n_cells[dim + 1]
        self.site_dim = dim - 1 if sector == "e" else dim + 1
        open_sites = schedule.open_sites(sector)
        self.open_sites = open_sites
        self.interior = np.array(
            [s for s in range(n_sites) if s not in open_sites], dtype=np.int64)
        self.site_index = {int(s): i for i, s in enumerate(self.interior)}

        # detector matrix: interior sites x measurements
        dmat = (inc @ schedule.defect_matrix(sector))
        dmat.data %= 2
        dmat.eliminate_zeros()
        self.detector_matrix = dmat[self.interior]

        self.mechanisms = build_mechanisms(schedule, self.noise)
        sig = (dmat @ self.mechanisms.signature)
        sig.data %= 2
        sig.eliminate_zeros()
        self._mech_sites = sig.tocsc()

        # mechanism endpoints: interior site index or -1 (boundary)
        nb = len(self.interior)
        self.boundary_node = nb
        adj = {}
        self.mech_endpoints = []
        probs = self.mechanisms.probs
        with np.errstate(divide="ignore"):
            w = np.where(probs > 0,
                         -np.log(np.clip(probs, 1e-300, 0.5)
                                 / (1 - np.clip(probs, 1e-300, 0.5))),
                         np.inf)
        for k in range(self.mechanisms.n):
            col = self._mech_sites.indices[
                self._mech_sites.indptr[k]:self._mech_sites.indptr[k + 1]]
            # open-site flips are unobserved: only interior endpoints count
            ends = sorted(self.site_index[int(s)] for s in col
                          if int(s) in self.site_index)
            if len(ends) == 1:
                ends = [ends[0], self.boundary_node]
            self.mech_endpoints.append(tuple(ends))
            if len(ends) != 2:
                continue    # silent or hyper mechanism
            if not np.isfinite(w[k]):
                continue    # zero-probability cell: edge omitted
            key = (ends[0], ends[1])
            if key not in adj or w[k] < adj[key][0]:
                adj[key] = (float(w[k]), k)
        self._adj = adj

        rows, cols, data = [], [], []
        for (a, b), (wt, k) in adj.items():
            rows += [a, b]
            cols += [b, a]
            data += [wt, wt]
        g = sp.csr_matrix((data, (rows, cols)),
                          shape=(nb + 1, nb + 1))
        self.graph = g
        self.dist, self.pred = dijkstra(g, directed=False,
                                        return_predecessors=True)
        finite = self.dist[np.isfinite(self.dist)]
        diameter = float(finite.max()) if finite.size else 0.0
        self.d_cut = d_cut if d_cut is not None else diameter / 2.0

        # secondary path structure through Pauli mechanisms only (used to
        # split mixed-sector outcome flips consistently)
        own_letter = "Z" if sector == "e" else "X"
        padj = {}
        for k, lab in enumerate(self.mechanisms.labels):
            if lab[0] != "pauli" or lab[3] != own_letter:
                continue
            ends = self.mech_endpoints[k]
            if len(ends) != 2 or ends[0] == ends[1]:
                continue
            key = (ends[0], ends[1])
            if key not in padj:
                padj[key] = (1.0, k)
        self._pauli_adj = padj
        rows, cols, data = [], [], []
        for (a, b), (wt, k) in padj.items():
            rows += [a, b]
            cols += [b, a]
            data += [wt, wt]
        pg = sp.csr_matrix((data, (rows, cols)), shape=(nb + 1, nb + 1))
        _, self._pauli_pred = dijkstra(pg, directed=False,
                                       return_predecessors=True)

    # -- shot-level ---------------------------------------------------------

    def events_from_outcomes(self, outcomes):
        v = (self.detector_matrix @ np.asarray(outcomes, dtype=np.uint8)) % 2
        return np.nonzero(v)[0]

    def events_from_mechanisms(self, occ):
        flips = (self.mechanisms.signature @ occ.astype(np.uint8)) % 2
        v = (self.detector_matrix @ flips) % 2
        return np.nonzero(v)[0]

    def build_decoding_graph(self, events, time_T_open=True, prune=True):
        k = len(events)
        idx = np.asarray(events, dtype=np.int64)
        w = self.dist[np.ix_(idx, idx)].copy()
        np.fill_diagonal(w, np.inf)
        if prune and self.d_cut > 0:
            w[w > self.d_cut] = np.inf
        bw = self.dist[idx, self.boundary_node].copy() if time_T_open else None
        return DecodingGraph(list(map(int, idx)), w, bw, paths=self)

    def path_mechanisms(self, a, b, pauli_only=False):
        """Mechanism ids along the shortest path between interior-site
        indices a and b (b = -1 for the boundary node)."""
        pred = self._pauli_pred if pauli_only else self.pred
        adj = self._pauli_adj if pauli_only else self._adj
        target = self.boundary_node if b == -1 else b
        out = []
        cur = target
        while cur != a:
            prev = pred[a, cur]
            if prev < 0:
                raise RuntimeError("disconnected path request")
            key = (min(prev, cur), max(prev, cur))
            out.append(adj[key][1])
            cur = prev
        return out
