"""Spacetime matching decoder: fix, close at the final slice, judge.

The decoder operates per sector: detection events are matched through the
mechanism graph (open time boundary absorbing unpaired events), the matched
shortest paths form the spacetime fix, and the final-slice correction
closes the total pattern in the buffer region with its homology class
cancelled.  Logical failure is judged two ways that must agree: fast, by
the anticommutation bits of the occurred mechanisms against the backward
propagated logicals; and homologically, from the class of the closed total
defect pattern relative to the injected error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..complexes import BinaryChain, boundary, coboundary, validate_chain
from ..complexes.homology import class_vector, homology_basis, solve2
from ..codes.logicals import propagate_logicals
from ..sim.noise import NoiseModel
from .graph import SectorGeometry
from .matching import min_weight_perfect_matching


@dataclass
class CorrectionPlan:
    sector: str
    spacetime_fix: BinaryChain
    final_slice_correction: BinaryChain
    matched_pairs: list = field(default_factory=list)
    mechanisms: list = field(default_factory=list)
    exact: bool = True


def _cell_level(cx, dim, cell):
    tag = cx.tags[dim][cell]
    if "level" in tag:
        return tag["level"]
    base = tag.get("base")
    return base[-1] if base is not None else 0


class SectorDecoder:
    """Matching decoder for one sector of a schedule."""

    def __init__(self, schedule, sector, noise, logicals=None, d_cut=None):
        self.schedule = schedule
        self.sector = sector
        self.geom = SectorGeometry(schedule, sector, noise, d_cut=d_cut)
        self.logicals = logicals if logicals is not None else \
            propagate_logicals(schedule)
        self._error_cell_cache = {}
        self._slice_setup = None
        self._mixed_paths = {}
        self._alpha = self._mechanism_alphas()

    # -- alpha bookkeeping ---------------------------------------------------

    def _mechanism_alphas(self):
        """Sector-restricted observable flips per mechanism.

        A correction applied by this sector realizes only the mechanism's
        own-sector content: a Y error enters the e graph as its Z part and
        the m graph as its X part.  An outcome flip whose defect segments
        live in one sector carries its full absorption bit there; a mixed
        flip (honeycomb) is split by decomposing its sector cells into
        pure-typed Pauli mechanisms, so the two sector shares XOR back to
        the full bit.
        """
        mech = self.geom.mechanisms
        part = {"e": {"Z": "Z", "Y": "Z"}, "m": {"X": "X", "Y": "X"}}[self.sector]
        nlog = len(self.logicals)
        out = np.zeros((nlog, mech.n), dtype=np.uint8)
        mixed = []
        for k, lab in enumerate(mech.labels):
            if lab[0] == "pauli":
                _, q, r, letter = lab
                eff = part.get(letter)
                if eff is not None:
                    for li, L in enumerate(self.logicals):
                        out[li, k] = L.alpha_pauli(q, r, eff)
            else:
                m = self.schedule.measurements()[lab[1]]
                own = m.e_cells if self.sector == "e" else m.m_cells
                other = m.m_cells if self.sector == "e" else m.e_cells
                if not own:
                    continue
                if not other:
                    for li, L in enumerate(self.logicals):
                        out[li, k] = L.beta[lab[1]]
                else:
                    mixed.append(k)
        for k in mixed:
            share = self._mixed_flip_share(k)
            out[:, k] = share
        return out

    def _mixed_flip_share(self, k):
        """Sector share of a mixed flip: the observable flip of a local
        pure-Pauli path reproducing its own-sector detection events."""
        mech = self.geom.mechanisms
        m = self.schedule.measurements()[mech.labels[k][1]]
        own = m.e_cells if self.sector == "e" else m.m_cells
        cx = self.schedule.spacetime
        dim = self.schedule.e_dim if self.sector == "e" else self.schedule.m_dim
        sites = set()
        for c in own:
            if self.sector == "e":
                sites ^= set(cx.boundary[dim][c])
            else:
                sites ^= set(cx.coboundary_of(dim, c))
        nodes = [self.geom.site_index[s] for s in sites
                 if s in self.geom.site_index]
        letter = "Z" if self.sector == "e" else "X"
        share = np.zeros(len(self.logicals), dtype=np.uint8)
        if not nodes:
            return share
        if len(nodes) == 1:
            path = self.geom.path_mechanisms(nodes[0], -1, pauli_only=True)
        elif len(nodes) == 2:
            path = self.geom.path_mechanisms(nodes[0], nodes[1],
                                             pauli_only=True)
        else:
            raise RuntimeError("mixed flip with more than two events")
        self._mixed_paths[k] = list(path)
        for kk in path:
            lab = mech.labels[kk]
            if lab[0] != "pauli":
                raise RuntimeError("mixed flip share needs a Pauli path")
            _, q, r, lt = lab
            eff = letter if lt in (letter, "Y") else None
            if eff is None:
                raise RuntimeError("mixed flip path crosses the other sector")
            for li, L in enumerate(self.logicals):
                share[li] ^= L.alpha_pauli(q, r, eff)
        return share

    def full_occurrence_alpha(self, occ):
        """Observable flips of physically occurred mechanisms (full Paulis)."""
        mech = self.geom.mechanisms
        a = np.zeros(len(self.logicals), dtype=np.uint8)
        for k in np.nonzero(occ)[0]:
            lab = mech.labels[k]
            for li, L in enumerate(self.logicals):
                if lab[0] == "pauli":
                    a[li] ^= L.alpha_pauli(lab[1], lab[2], lab[3])
                else:
                    a[li] ^= L.beta[lab[1]]
        return a

    def relevant_logicals(self):
        """Indices of logicals this sector's corrections can flip."""
        return [li for li in range(len(self.logicals))
                if self._alpha[li].any()]

    # -- decoding -------------------------------------------------------------

    def decode_events(self, events, time_T_open=True):
        g = self.geom.build_decoding_graph(events, time_T_open=time_T_open)
        res = min_weight_perfect_matching(g.weights, g.boundary)
        mechs = []
        for i, j in res.pairs:
            mechs.extend(g.edge_correction(i, j))
        return res, mechs, g

    def correction_alpha(self, mechs):
        a = np.zeros(len(self.logicals), dtype=np.uint8)
        for k in mechs:
            a ^= self._alpha[:, k]
        return a

    def occurrence_alpha(self, occ):
        return (self._alpha @ occ.astype(np.uint8)) % 2

    # -- faithful correction plan ----------------------------------------------

    def error_cells(self, mech_index):
        """Local defect-cell chain of a mechanism (solved once, cached)."""
        if mech_index in self._error_cell_cache:
            return self._error_cell_cache[mech_index]
        lab = self.geom.mechanisms.labels[mech_index]
        sched = self.schedule
        if lab[0] == "flip":
            m = sched.measurements()[lab[1]]
            cells = frozenset(m.e_cells if self.sector == "e" else m.m_cells)
        else:
            cells = self._solve_local_cells(mech_index)
        self._error_cell_cache[mech_index] = cells
        return cells

    def _incidence(self):
        cx = self.schedule.spacetime
        dim = self.schedule.e_dim if self.sector == "e" else self.schedule.m_dim
        if self.sector == "e":
            return cx.boundary_matrix(dim)
        return cx.boundary_matrix(dim + 1).T

    def _solve_local_cells(self, mech_index, radius=3):
        """Smallest-support local chain whose violation equals the
        mechanism's detector signature (class-safe by locality)."""
        cx = self.schedule.spacetime
        inc = self._incidence().tocsc()
        col = self.geom._mech_sites.getcol(mech_index)
        sites = set(col.indices.tolist())
        if not sites:
            return frozenset()
        # grow a neighborhood of candidate cells around the lit sites
        cells = set()
        frontier = set(sites)
        inc_csr = inc.tocsr()
        for _ in range(radius):
            new_cells = set()
            for s in frontier:
                new_cells |= set(inc_csr[s].indices.tolist())
            cells |= new_cells
            frontier = set()
            for c in new_cells:
                frontier |= set(inc.getcol(c).indices.tolist())
        cells = sorted(cells)
        site_rows = sorted({int(r) for c in cells
                            for r in inc.getcol(c).indices})
        sub = inc[np.ix_(site_rows, cells)].toarray() % 2
        target = np.zeros(len(site_rows), dtype=np.uint8)
        for i, s in enumerate(site_rows):
            if s in sites:
                target[i] = 1
        sol = solve2(sub, target)
        if sol is None:
            raise RuntimeError("no local chain matches the signature")
        return frozenset(int(cells[i]) for i in np.nonzero(sol)[0])

    def _slice_data(self):
        if self._slice_setup is None:
            cx = self.schedule.spacetime
            dim = self.schedule.e_dim if self.sector == "e" else \
                self.schedule.m_dim
            lvl = self.schedule.meta.get("slice_level", 0)
            cells = [c for c in range(cx.n_cells[dim])
                     if _cell_level(cx, dim, c) >= lvl - 1]
            inc = self._incidence().tocsc()[:, cells]
            self._slice_setup = (cells, inc)
        return self._slice_setup

    def derive_correction(self, history_or_outcomes, matching=None,
                          time_T_open=True):
        """Prop-1 correction: minimum-weight fix plus slice closure."""
        outcomes = getattr(history_or_outcomes, "outcomes",
                           history_or_outcomes)
        sched = self.schedule
        cx = sched.spacetime
        dim = sched.e_dim if self.sector == "e" else sched.m_dim
        kind = "cycle" if self.sector == "e" else "cocycle"
        vec = (sched.defect_matrix(self.sector)
               @ np.asarray(outcomes, dtype=np.uint8)) % 2
        defect = BinaryChain.from_indicator(cx, dim, vec)
        events = self.geom.events_from_outcomes(outcomes)
        if matching is None:
            matching, mechs, _ = self.decode_events(events, time_T_open)
        else:
            mechs = []
            g = self.geom.build_decoding_graph(events, time_T_open)
            for i, j in matching.pairs:
                mechs.extend(g.edge_correction(i, j))
        fix_cells = frozenset()
        for k in mechs:
            fix_cells ^= self.error_cells(k)
        fix = BinaryChain(cx, dim, fix_cells)
        # close the remaining violations (all at open sites) in the buffer
        resid = validate_chain(defect ^ fix, kind)
        slice_chain = self._close_on_slice(resid, defect, fix)
        total = defect ^ fix ^ slice_chain
        viol = validate_chain(total, kind)
        if viol.support:
            raise RuntimeError("decoder produced a non-closed total pattern")
        return CorrectionPlan(self.sector, fix, slice_chain,
                              matched_pairs=list(matching.pairs),
                              mechanisms=mechs, exact=matching.exact)

    def _close_on_slice(self, resid, defect, fix):
        cx = self.schedule.spacetime
        dim = self.schedule.e_dim if self.sector == "e" else \
            self.schedule.m_dim
        cells, inc = self._slice_data()
        if not resid.support:
            closure = frozenset()
        else:
            target = np.zeros(inc.shape[0], dtype=np.uint8)
            target[list(resid.support)] = 1
            sol = solve2(inc.toarray() % 2, target)
            if sol is None:
                raise RuntimeError("slice closure infeasible")
            closure = frozenset(int(cells[i]) for i in np.nonzero(sol)[0])
        chain = BinaryChain(cx, dim, closure)
        # cancel the homology class of the closed total pattern
        reps, duals = self._sector_homology()
        total = defect ^ fix ^ chain
        cls = class_vector(total.indicator(), duals)
        for i in np.nonzero(cls)[0]:
            chain = chain ^ self._slice_rep(i)
        return chain

    _HOMOLOGY_CACHE = {}

    def _sector_homology(self):
        key = (id(self.schedule), self.sector)
        cache = SectorDecoder._HOMOLOGY_CACHE
        if key not in cache:
            cx = self.schedule.spacetime
            dim = self.schedule.e_dim if self.sector == "e" else \
                self.schedule.m_dim
            if self.sector == "e":
                reps, duals = homology_basis(cx, dim)
            else:
                # cochain classes: pair m cochains with homology cycle reps
                duals, reps = homology_basis(cx, dim)
            cache[key] = (reps, duals)
        return cache[key]

    _SLICE_REP_CACHE = {}

    def _slice_rep(self, i):
        """A class-i representative supported on the slice buffer."""
        key = (id(self.schedule), self.sector, i)
        cache = SectorDecoder._SLICE_REP_CACHE
        if key in cache:
            return cache[key]
        cx = self.schedule.spacetime
        dim = self.schedule.e_dim if self.sector == "e" else \
            self.schedule.m_dim
        cells, inc = self._slice_data()
        reps, duals = self._sector_homology()
        # cycles supported on the buffer: kernel of the restricted incidence
        from ..complexes.homology import kernel_basis2
        ker = kernel_basis2(inc.toarray() % 2)
        want = np.zeros(len(reps), dtype=np.uint8)
        want[i] = 1
        # find a kernel combination whose class vector is e_i
        classes = []
        for v in ker:
            full = np.zeros(cx.n_cells[dim], dtype=np.uint8)
            full[np.asarray(cells)[v.astype(bool)]] = 1
            classes.append(class_vector(full, duals))
        classes = np.array(classes, dtype=np.uint8).T if classes else \
            np.zeros((len(reps), 0), dtype=np.uint8)
        sol = solve2(classes, want)
        if sol is None:
            raise RuntimeError("no slice-supported representative found")
        full = np.zeros(cx.n_cells[dim], dtype=np.uint8)
        for j in np.nonzero(sol)[0]:
            full[np.asarray(cells)[ker[j].astype(bool)]] ^= 1
        rep = BinaryChain.from_indicator(cx, dim, full)
        cache[key] = rep
        return rep

    # -- judgment --------------------------------------------------------------

    def judge_homological(self, error_chain, outcomes, plan):
        """Failure bits: class of the closed residual against the sector's
        dual representatives.

        Both (error + measured) and (measured + fix + slice) are closed, so
        their sum error + fix + slice is the closed residual; the class of
        the decoder's own total is zero by construction, which makes this
        equal to the class of (error + measured + fix).
        """
        total = error_chain ^ plan.spacetime_fix ^ plan.final_slice_correction
        kind = "cycle" if self.sector == "e" else "cocycle"
        viol = validate_chain(total, kind)
        if viol.support:
            raise RuntimeError("residual is not closed")
        reps, duals = self._sector_homology()
        return class_vector(total.indicator(), duals)


class CodeDecoder:
    """Both sector decoders plus the homology-class bookkeeping.

    `shot_failure` implements the full judgment: observable flips of the
    occurred mechanisms, of the matched correction paths in both sectors,
    and of the class-cancelling slice corrections.
    """

    def __init__(self, schedule, noise, d_cut=None):
        from ..codes.logicals import propagate_logicals
        self.schedule = schedule
        self.noise = noise
        self.logicals = propagate_logicals(schedule)
        self.e = SectorDecoder(schedule, "e", noise, logicals=self.logicals,
                               d_cut=d_cut)
        self.m = SectorDecoder(schedule, "m", noise, logicals=self.logicals,
                               d_cut=d_cut)
        self.mechanisms = self.e.geom.mechanisms

    def decode_outcomes(self, outcomes, time_T_open=True):
        """Matched paths per sector for one shot's outcomes."""
        out = {}
        for dec in (self.e, self.m):
            events = dec.geom.events_from_outcomes(outcomes)
            if len(events):
                res, mechs, _ = dec.decode_events(events, time_T_open)
            else:
                res, mechs = None, []
            out[dec.sector] = (res, mechs)
        return out

    def shot_failure(self, occ, outcomes, time_T_open=True):
        """Observable flips left after decoding: the occurred mechanisms'
        flips against the matched corrections of both sectors.  The
        recorded-outcome part of each observable (absorbed measurement
        bits, including any recorded homologically nontrivial loops) is
        common to truth and prediction and cancels identically."""
        decoded = self.decode_outcomes(outcomes, time_T_open)
        a = self.e.full_occurrence_alpha(occ)
        a ^= self.e.correction_alpha(decoded["e"][1])
        a ^= self.m.correction_alpha(decoded["m"][1])
        exact = all(decoded[s][0] is None or decoded[s][0].exact
                    for s in ("e", "m"))
        return a, exact
