import math

import numpy as np
from scipy.stats import qmc


def sobol_points(count: int, dimension: int, seed: int) -> np.ndarray:
    """
    `count` scrambled Sobol points in (0, 1)^dimension, deterministic in `seed`.

    The underlying draw is rounded up to a power of two (keeping the balance
    properties of the sequence) and truncated.
    """
    sampler = qmc.Sobol(d=dimension, scramble=True, seed=seed)
    points = sampler.random_base2(m=max(0, math.ceil(math.log2(max(count, 1)))))
    return points[:count]


def random_shifts(count: int, dimension: int, seed: int) -> np.ndarray:
    """Cranley-Patterson shifts, one row per box, in box order."""
    return np.random.default_rng(seed).random((count, dimension))


def shifted(points: np.ndarray, shift: np.ndarray) -> np.ndarray:
    """Applies a toroidal shift to points in the unit cube."""
    return np.mod(points + shift, 1.0)
