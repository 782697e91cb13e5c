"""Shot sampling for measurement schedules.

`sample_run` drives the stabilizer tableau shot by shot: the register is
prepared in a canonical code state by running two warmup periods with all
branch choices forced trivial (a valid quantum trajectory, after which all
recorded parity cells are deterministic and the initial time boundary is
closed), then the recorded rounds execute with noise.

`frame_sample` uses the all-trivial reference history and propagates
sampled Pauli errors through the schedule by anticommutation, which gives
the identical distribution of syndrome differences at a fraction of the
cost; it is fully vectorized over shots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .noise import NoiseModel, shot_rng
from .tableau import StabilizerTableau, pauli_from_string

WARMUP_PERIODS = 2


@dataclass
class SyndromeHistory:
    schedule: object
    outcomes: np.ndarray     # flat uint8, one bit per recorded measurement

    def chains(self):
        return self.schedule.chains_from_outcomes(self.outcomes)

    def by_round(self):
        out = []
        i = 0
        for rnd in self.schedule.rounds:
            out.append(self.outcomes[i:i + len(rnd)])
            i += len(rnd)
        return out


def _warmup_rounds(schedule):
    """Whole periods replayed so recording starts phase-aligned at round 0."""
    per = schedule.period
    if len(schedule.rounds) < per:
        raise ValueError("schedule shorter than one period")
    return schedule.rounds[:per] * WARMUP_PERIODS


def prepare_state(schedule):
    """Canonical code state: |0..0> driven through forced-trivial warmup."""
    tab = StabilizerTableau(schedule.n_qubits, pure=True)
    for rnd in _warmup_rounds(schedule):
        for m in rnd:
            tab.measure_product(m.pauli, m.support, force=0)
    return tab


_PREP_CACHE = {}


def prepared_tableau(schedule):
    key = id(schedule)
    if key not in _PREP_CACHE:
        _PREP_CACHE[key] = prepare_state(schedule)
    return _PREP_CACHE[key].copy()


def _packed_measurements(schedule):
    n = schedule.n_qubits
    out = []
    for m in schedule.measurements():
        out.append(pauli_from_string(m.pauli, m.support, n))
    return out


_PACK_CACHE = {}


def packed_measurements(schedule):
    key = id(schedule)
    if key not in _PACK_CACHE:
        _PACK_CACHE[key] = _packed_measurements(schedule)
    return _PACK_CACHE[key]


def noisy_rounds(schedule, tail=None, lead=None):
    """The noisy window [lo, hi): noise acts on every recorded round except
    a lead-in and a tail of one period each.  The noiseless recorded tail
    removes the closing-window ambiguity (a data error immediately before
    the last check of a type is syndrome-equivalent to a misread outcome);
    the noiseless recorded lead-in anchors the detectors that compare the
    first noisy rounds against the preparation."""
    tail = schedule.period if tail is None else tail
    lead = schedule.period if lead is None else lead
    return min(lead, schedule.n_rounds), max(0, schedule.n_rounds - tail)


def sample_run(schedule, noise, n_shots, seed, tail=None):
    """Exact tableau sampling; deterministic given (schedule, noise, seed)."""
    noise = noise if isinstance(noise, NoiseModel) else NoiseModel(*noise)
    packed = packed_measurements(schedule)
    base = prepared_tableau(schedule)
    histories = []
    n = schedule.n_qubits
    lo, hi = noisy_rounds(schedule, tail)
    for shot in range(n_shots):
        rng = shot_rng(seed, shot)
        tab = base.copy()
        outcomes = np.zeros(schedule.n_measurements, dtype=np.uint8)
        flat = 0
        for ri, rnd in enumerate(schedule.rounds):
            noisy = lo <= ri < hi
            if noisy and noise.p_before_round > 0:
                hit = np.nonzero(rng.random(n) < noise.p_before_round)[0]
                for q in hit:
                    letter = "XYZ"[rng.integers(3)]
                    tab.apply_pauli(letter, [int(q)])
            for m in rnd:
                x, z, t = packed[flat]
                bit = tab.measure_packed(x, z, t, rng=rng)
                if noisy and noise.q_outcome_flip > 0 and \
                        rng.random() < noise.q_outcome_flip:
                    bit ^= 1
                outcomes[flat] = bit
                flat += 1
        histories.append(SyndromeHistory(schedule, outcomes))
    return histories


# ---------------------------------------------------------------------------
# Pauli-frame machinery


@dataclass
class ErrorMechanisms:
    """Elementary error mechanisms of (schedule, noise): qubit Paulis before
    each round and outcome flips, with their measurement-flip signatures."""

    schedule: object
    labels: list                 # ("pauli", q, round, letter) | ("flip", meas)
    probs: np.ndarray
    signature: sp.csr_matrix     # (n_measurements x n_mech) outcome flips

    @property
    def n(self):
        return len(self.labels)


def _letters_anticommute(a, b):
    return a != "I" and b != "I" and a != b


def build_mechanisms(schedule, noise, tail=None):
    """Enumerate mechanisms and their outcome-flip signatures.

    A Pauli before round r flips every recorded measurement at rounds >= r
    whose letter at that qubit anticommutes with it (Pauli frames pass
    through Pauli-product measurements unchanged).  Mechanisms exist only
    in the noisy window (see `noisy_rounds`).
    """
    noise = noise if isinstance(noise, NoiseModel) else NoiseModel(*noise)
    meas = schedule.measurements()
    lo, hi = noisy_rounds(schedule, tail)
    touch = {}
    for j, m in enumerate(meas):
        r = schedule.round_of(j)
        for ch, q in zip(m.pauli, m.support):
            touch.setdefault(q, []).append((r, j, ch))
    labels = []
    probs = []
    rows, cols = [], []
    if noise.p_before_round > 0:
        for q in range(schedule.n_qubits):
            hits = touch.get(q, [])
            for letter in "XYZ":
                flips = [(r, j) for (r, j, ch) in hits
                         if _letters_anticommute(letter, ch)]
                for r in range(schedule.n_rounds):
                    # lead-in and tail mechanisms carry zero probability:
                    # never sampled, never weighted into the matching graph,
                    # but they keep the correction bookkeeping connected
                    # through the noiseless rounds
                    mech = len(labels)
                    labels.append(("pauli", q, r, letter))
                    probs.append(noise.p_before_round / 3.0
                                 if lo <= r < hi else 0.0)
                    for (rm, j) in flips:
                        if rm >= r:
                            rows.append(j)
                            cols.append(mech)
    if noise.q_outcome_flip > 0:
        for j in range(len(meas)):
            if not lo <= schedule.round_of(j) < hi:
                continue
            mech = len(labels)
            labels.append(("flip", j))
            probs.append(noise.q_outcome_flip)
            rows.append(j)
            cols.append(mech)
    sig = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.uint8), (rows, cols)),
        shape=(len(meas), len(labels)))
    return ErrorMechanisms(schedule, labels, np.array(probs), sig)


def frame_sample(schedule, noise, n_shots, seed, mechanisms=None,
                 return_errors=False):
    """Reference-frame sampling: outcomes = error signatures (the forced
    trivial history is the all-zero reference).  Vectorized over shots."""
    noise = noise if isinstance(noise, NoiseModel) else NoiseModel(*noise)
    mech = mechanisms or build_mechanisms(schedule, noise)
    rng = shot_rng(seed, 0xF8A3E)
    # occurrence matrix: shots x mechanisms
    occ = (rng.random((n_shots, mech.n)) < mech.probs[None, :])
    flips = (occ.astype(np.uint8) @ mech.signature.T.toarray()) % 2
    histories = [SyndromeHistory(schedule, flips[i].astype(np.uint8))
                 for i in range(n_shots)]
    if return_errors:
        return histories, occ, mech
    return histories
