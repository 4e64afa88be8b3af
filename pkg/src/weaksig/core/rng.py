"""Seeded, splittable random streams.

Every stochastic operation takes an explicit 64-bit seed and builds its own
PCG64 generator from it, so results never depend on call order.
"""

from typing import List

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Generator for one stochastic operation."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def spawn_seeds(seed: int, count: int) -> List[int]:
    """Derive `count` independent 64-bit child seeds from `seed`.

    Child i depends only on (seed, i), so batches may be evaluated in any
    order or in parallel.
    """
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]
