"""Circuit-level noise model: depolarizing before each round plus outcome flips."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseModel:
    """p: per-qubit per-round depolarizing (X/Y/Z with p/3 each);
    q: independent classical flip probability per measurement outcome."""

    p_before_round: float = 0.0
    q_outcome_flip: float = 0.0

    def __post_init__(self):
        if not (0 <= self.p_before_round <= 1 and 0 <= self.q_outcome_flip <= 1):
            raise ValueError("probabilities must lie in [0, 1]")

    @property
    def trivial(self):
        return self.p_before_round == 0 and self.q_outcome_flip == 0


def shot_rng(seed, shot_index):
    """Counter-based per-shot stream; shots are order-independent."""
    key = np.array([np.uint64(seed & (2**64 - 1)),
                    np.uint64(shot_index & (2**64 - 1))], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
