"""Homology-class bookkeeping for the matched decoder.

A shot's measured defect chain plus the matched fix can wind the torus
("homologically non-trivial loops are recorded"); the final-slice
correction cancels that winding with logical representatives, flipping
logical observables.  The failure formula therefore carries a class term.

The class functionals are built directly against the logicals: take each
logical's fully propagated round-0 Pauli form; its per-sector defect chains
are silent (no outcome flips) and realize the logical's winding.  For each
logical j we solve for a gauge-invariant functional F_j (an e-part
orthogonal to every face boundary, and an m-part orthogonal to the
coboundary of every interior volume - windings that can only be undone
through the open time cap must remain visible) with <chain_i, F_j> =
delta_ij.  Applying the class-cancel for component j flips exactly the
symplectic partners of logical j.
"""

from __future__ import annotations

import numpy as np

from ..complexes.gf2fast import solve_gf2


def _logical_round0_mechs(schedule, logicals, mech):
    lookup = {lab: k for k, lab in enumerate(mech.labels)}
    out = []
    n = schedule.n_qubits
    for L in logicals:
        x, z = L.snapshots_x[0], L.snapshots_z[0]
        ks = []
        for q in range(n):
            letter = {(0, 0): None, (1, 0): "X", (1, 1): "Y",
                      (0, 1): "Z"}[(int(x[q]), int(z[q]))]
            if letter is None:
                continue
            k = lookup.get(("pauli", q, 0, letter))
            if k is None:
                raise RuntimeError("round-0 mechanism missing")
            ks.append(k)
        out.append(ks)
    return out


class ClassSystem:
    """Joint class functionals and partner matrix for a CodeDecoder."""

    def __init__(self, dec_e, dec_m):
        sched = dec_e.schedule
        self.schedule = sched
        logs = dec_e.logicals
        mech = dec_e.geom.mechanisms
        cx = sched.spacetime
        ne = cx.n_cells[sched.e_dim]
        nm = cx.n_cells[sched.m_dim]
        lookup = {lab: k for k, lab in enumerate(mech.labels)}

        # calibration chains: sector defect cells of each logical's round-0
        # Pauli decomposition
        sets = _logical_round0_mechs(sched, logs, mech)
        chains = []
        for ks in sets:
            ve = np.zeros(ne, dtype=np.uint8)
            vm = np.zeros(nm, dtype=np.uint8)
            for k in ks:
                lab = mech.labels[k]
                if lab[3] in ("Z", "Y"):
                    kz = lookup[("pauli", lab[1], lab[2], "Z")]
                    for c in dec_e.error_cells(kz):
                        ve[c] ^= 1
                if lab[3] in ("X", "Y"):
                    kx = lookup[("pauli", lab[1], lab[2], "X")]
                    for c in dec_m.error_cells(kx):
                        vm[c] ^= 1
            chains.append((ve, vm))

        # invariance conditions
        Be = cx.boundary_matrix(sched.e_dim + 1).toarray().T % 2  # faces x edges
        m_site_dim = sched.m_dim + 1
        open_m = dec_m.geom.open_sites
        interior_vols = [v for v in range(cx.n_cells[m_site_dim])
                         if v not in open_m]
        Bm = cx.boundary_matrix(m_site_dim).toarray() % 2        # m-cells x vols
        Bm = Bm[:, interior_vols].T                              # vols x m-cells

        nlog = len(logs)
        A = np.zeros((Be.shape[0] + Bm.shape[0] + nlog, ne + nm),
                     dtype=np.uint8)
        A[:Be.shape[0], :ne] = Be
        A[Be.shape[0]:Be.shape[0] + Bm.shape[0], ne:] = Bm
        for i, (ve, vm) in enumerate(chains):
            A[Be.shape[0] + Bm.shape[0] + i, :ne] = ve
            A[Be.shape[0] + Bm.shape[0] + i, ne:] = vm
        targets = np.zeros((A.shape[0], nlog), dtype=np.uint8)
        for j in range(nlog):
            targets[Be.shape[0] + Bm.shape[0] + j, j] = 1
        sols = solve_gf2(A, targets)
        self.F = []
        for j, sol in enumerate(sols):
            if sol is None:
                raise RuntimeError(
                    f"no gauge-invariant functional for logical {j}")
            self.F.append((sol[:ne], sol[ne:]))

        # partner matrix: cancelling class component j flips the symplectic
        # partners of logical j
        self.partner = np.zeros((nlog, nlog), dtype=np.uint8)
        n = sched.n_qubits
        for j, Lj in enumerate(logs):
            xj, zj = Lj.snapshots_x[0], Lj.snapshots_z[0]
            for i, Li in enumerate(logs):
                xi, zi = Li.snapshots_x[0], Li.snapshots_z[0]
                self.partner[i, j] = (int(xj @ zi) + int(zj @ xi)) % 2

        # per-measurement and per-mechanism class columns
        de = sched.defect_matrix("e").toarray()
        dm = sched.defect_matrix("m").toarray()
        self.meas_class = np.zeros((nlog, sched.n_measurements), dtype=np.uint8)
        for j, (fe, fm) in enumerate(self.F):
            self.meas_class[j] = ((fe @ de) + (fm @ dm)) % 2
        self._mech_class = {}
        self._dec_e, self._dec_m = dec_e, dec_m

    def mechanism_class(self, k):
        if k not in self._mech_class:
            lab = self._dec_e.geom.mechanisms.labels[k]
            lookup = {l: i for i, l in
                      enumerate(self._dec_e.geom.mechanisms.labels)}
            sched = self.schedule
            cx = sched.spacetime
            ve = np.zeros(cx.n_cells[sched.e_dim], dtype=np.uint8)
            vm = np.zeros(cx.n_cells[sched.m_dim], dtype=np.uint8)
            if lab[0] == "flip":
                m = sched.measurements()[lab[1]]
                for c in m.e_cells:
                    ve[c] ^= 1
                for c in m.m_cells:
                    vm[c] ^= 1
            else:
                _, q, r, letter = lab
                if letter in ("Z", "Y"):
                    for c in self._dec_e.error_cells(
                            lookup[("pauli", q, r, "Z")]):
                        ve[c] ^= 1
                if letter in ("X", "Y"):
                    for c in self._dec_m.error_cells(
                            lookup[("pauli", q, r, "X")]):
                        vm[c] ^= 1
            v = np.zeros(len(self.F), dtype=np.uint8)
            for j, (fe, fm) in enumerate(self.F):
                v[j] = (int(fe @ ve) + int(fm @ vm)) % 2
            self._mech_class[k] = v
        return self._mech_class[k]

    def outcome_class(self, outcomes):
        return (self.meas_class @ np.asarray(outcomes, dtype=np.uint8)) % 2

    def correction_flips(self, outcomes, mechs_e, mechs_m):
        """Observable flips of the class-cancelling slice correction."""
        c = self.outcome_class(outcomes)
        for k in mechs_e:
            c ^= self.mechanism_class_sector(k, "e")
        for k in mechs_m:
            c ^= self.mechanism_class_sector(k, "m")
        return (self.partner @ c) % 2

    _sector_cache = None

    def mechanism_class_sector(self, k, sector):
        """Class contribution of a mechanism used as a correction in one
        sector (only its own-sector defect content applies)."""
        key = (k, sector)
        if self._sector_cache is None:
            self._sector_cache = {}
        if key not in self._sector_cache:
            lab = self._dec_e.geom.mechanisms.labels[k]
            lookup = {l: i for i, l in
                      enumerate(self._dec_e.geom.mechanisms.labels)}
            sched = self.schedule
            cx = sched.spacetime
            ve = np.zeros(cx.n_cells[sched.e_dim], dtype=np.uint8)
            vm = np.zeros(cx.n_cells[sched.m_dim], dtype=np.uint8)
            if lab[0] == "flip":
                dec = self._dec_e if sector == "e" else self._dec_m
                path = dec._mixed_paths.get(k)
                if path is not None:
                    # mixed flip: its sector share was defined through a
                    # pure-Pauli path; the class must follow the same cells
                    letter = "Z" if sector == "e" else "X"
                    tgt = ve if sector == "e" else vm
                    for kk in path:
                        lab2 = dec.geom.mechanisms.labels[kk]
                        for c in dec.error_cells(
                                lookup[("pauli", lab2[1], lab2[2], letter)]):
                            tgt[c] ^= 1
                else:
                    m = sched.measurements()[lab[1]]
                    cells = m.e_cells if sector == "e" else m.m_cells
                    tgt = ve if sector == "e" else vm
                    for c in cells:
                        tgt[c] ^= 1
            else:
                _, q, r, letter = lab
                if sector == "e" and letter in ("Z", "Y"):
                    for c in self._dec_e.error_cells(
                            lookup[("pauli", q, r, "Z")]):
                        ve[c] ^= 1
                if sector == "m" and letter in ("X", "Y"):
                    for c in self._dec_m.error_cells(
                            lookup[("pauli", q, r, "X")]):
                        vm[c] ^= 1
            v = np.zeros(len(self.F), dtype=np.uint8)
            for j, (fe, fm) in enumerate(self.F):
                v[j] = (int(fe @ ve) + int(fm @ vm)) % 2
            self._sector_cache[key] = v
        return self._sector_cache[key]
