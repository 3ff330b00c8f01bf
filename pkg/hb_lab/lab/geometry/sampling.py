"""Uniform samples in balls and spherical shells from counter-based random streams.

Batch ``b`` of a draw with seed ``s`` always comes from the Philox stream keyed by
``(s, b)``, so asking for more samples appends batches and never reshuffles earlier ones.
"""

import math

import numpy as np

from ..model import DimensionError, PreconditionError, Region

BATCH_SIZE = 1024
MIN_SAMPLES = 1000


def batch_generator(seed: int, batch: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(batch, ))))


def sample_region(region: Region, n_samples: int, seed: int) -> np.ndarray:
    """``n_samples`` points uniform in ``region``, shape (n_samples, d)."""
    if n_samples < 1:
        raise PreconditionError(f'n_samples={n_samples} must be positive')
    d = region.dim
    if d < 1:
        raise DimensionError('region center must have at least one coordinate')
    center = np.asarray(region.center, dtype=float)
    a, b = region.inner**d, region.outer**d
    batches = []
    for k in range(math.ceil(n_samples / BATCH_SIZE)):
        rng = batch_generator(seed, k)
        directions = rng.standard_normal((BATCH_SIZE, d))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = (rng.random(BATCH_SIZE) * (b - a) + a)**(1.0 / d)
        batches.append(center + radii[:, None] * directions)
    return np.concatenate(batches)[:n_samples]
