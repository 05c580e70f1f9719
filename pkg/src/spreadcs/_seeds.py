"""Deterministic seed derivation shared by the Monte Carlo harnesses.

Derived seeds depend only on the integer parts fed in, never on
execution order, so sweeps give identical results at any parallelism.
"""

from __future__ import annotations

import numpy as np

_SEED_MASK = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Collapse integer parts into one reproducible 64-bit seed."""
    entropy = [int(p) & _SEED_MASK for p in parts]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])
