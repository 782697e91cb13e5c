"""Measurement schedules: per-round Pauli products with defect maps.

A schedule materializes every recorded round plus a small virtual buffer of
future rounds.  Virtual rounds contribute no outcomes; their defect cells
mark the open time boundary (detector sites touching them are not
deterministic and are matched to the boundary instead), and the buffer
region of the spacetime complex is where final-slice closures live.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..complexes import BinaryChain, CellComplex


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Measurement:
    pauli: str
    support: tuple
    e_cells: tuple = ()
    m_cells: tuple = ()
    key: tuple = ()


@dataclass
class MeasurementSchedule:
    code: str
    L: int
    n_qubits: int
    period: int
    rounds: list                    # recorded rounds only
    virtual_rounds: list            # future buffer rounds (defect maps only)
    spacetime: CellComplex
    e_dim: int
    m_dim: int
    qubit_layout: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._flat = [m for rnd in self.rounds for m in rnd]
        self._round_of = np.array(
            [r for r, rnd in enumerate(self.rounds) for _ in rnd])
        self._check_rounds()

    # -- structure -----------------------------------------------------------

    def _check_rounds(self):
        for r, rnd in enumerate(self.rounds + self.virtual_rounds):
            seen = set()
            for m in rnd:
                if set(m.support) & seen:
                    raise ValueError(f"overlapping supports in round {r}")
                seen |= set(m.support)
                if len(m.pauli) != len(m.support):
                    raise ValueError("pauli/support length mismatch")

    @property
    def n_rounds(self):
        return len(self.rounds)

    @property
    def n_measurements(self):
        return len(self._flat)

    def measurements(self):
        return self._flat

    def round_of(self, flat_index):
        return int(self._round_of[flat_index])

    # -- defect maps -----------------------------------------------------------

    def defect_matrix(self, sector):
        """Sparse (n_cells x n_measurements) map from outcomes to cells."""
        dim = self.e_dim if sector == "e" else self.m_dim
        rows, cols = [], []
        for j, m in enumerate(self._flat):
            cells = m.e_cells if sector == "e" else m.m_cells
            for c in cells:
                rows.append(c)
                cols.append(j)
        return sp.csr_matrix(
            (np.ones(len(rows), dtype=np.uint8), (rows, cols)),
            shape=(self.spacetime.n_cells[dim], self.n_measurements))

    def chains_from_outcomes(self, outcomes):
        """(e BinaryChain, m BinaryChain) from a flat 0/1 outcome vector."""
        out = np.asarray(outcomes, dtype=np.uint8).reshape(-1)
        if out.shape[0] != self.n_measurements:
            raise ShapeMismatchError(
                f"{out.shape[0]} outcomes for {self.n_measurements} measurements")
        e_vec = (self.defect_matrix("e") @ out) % 2
        m_vec = (self.defect_matrix("m") @ out) % 2
        return (BinaryChain.from_indicator(self.spacetime, self.e_dim, e_vec),
                BinaryChain.from_indicator(self.spacetime, self.m_dim, m_vec))

    # -- open boundary ---------------------------------------------------------

    def open_sites(self, sector):
        """Detector sites whose parity cell extends past the recording window.

        e sites live one dimension below the e cells (their boundary), m
        sites one above the m cells (their coboundary).
        """
        cx = self.spacetime
        dim = self.e_dim if sector == "e" else self.m_dim
        open_cells = set()
        for rnd in self.virtual_rounds:
            for m in rnd:
                open_cells |= set(m.e_cells if sector == "e" else m.m_cells)
        sites = set()
        for c in open_cells:
            if sector == "e":
                sites |= set(cx.boundary[dim][c])
            else:
                sites |= set(cx.coboundary_of(dim, c))
        return sites

    def to_dict(self):
        return {
            "code": self.code,
            "L": self.L,
            "period": self.period,
            "n_qubits": self.n_qubits,
            "rounds": [[{"pauli": m.pauli,
                         "support": list(m.support),
                         "defects": {"e": sorted(m.e_cells),
                                     "m": sorted(m.m_cells)}}
                        for m in rnd] for rnd in self.rounds],
        }


def outcomes_to_defects(schedule, outcomes):
    """Symmetric-difference accumulation of defect cells over outcomes."""
    return schedule.chains_from_outcomes(outcomes)


def pauli_letter(meas, qubit):
    """Letter a measurement applies at a given qubit, or 'I'."""
    for ch, q in zip(meas.pauli, meas.support):
        if q == qubit:
            return ch
    return "I"
