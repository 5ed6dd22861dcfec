"""Deterministic seed derivation.

All randomized operations take an integer seed. Per-attempt randomness is
spawned from a SeedSequence so results never depend on execution order.
"""

from typing import List

import numpy as np


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def derive_seeds(seed: int, count: int, stream: int = 0) -> List[int]:
    """Return ``count`` child seeds of ``seed``.

    ``stream`` separates independent consumers that share a parent seed.
    """
    children = np.random.SeedSequence([seed, stream]).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


def derive_seed(seed: int, index: int, stream: int = 0) -> int:
    """Child seed number ``index``, equal to ``derive_seeds(seed, index + 1, stream)[index]``."""
    child = np.random.SeedSequence([seed, stream]).spawn(index + 1)[index]
    return int(child.generate_state(1, dtype=np.uint32)[0])
