"""
Synthetic test data: the three-Gaussian test function and reproducible
uniform noise.

Noise comes from numpy's PCG64 bit generator (PCG XSL RR 128/64) seeded
through ``SeedSequence(seed)``; each draw is low + (high - low) * U with
U a 53-bit double in [0, 1). The same seed yields bit-identical noise on
every platform numpy supports.
"""
import logging

import numpy as np

from src.geometry import Dataset
from src.utils.validation import validate_interval, validate_noise_amplitude

logger = logging.getLogger(__name__)

DEFAULT_INTERVAL = (-1.0, 1.0)


def tau(x):
    # tau(x) = e^(-15(x-1/2)^2) + 1/2 e^(-20(x-1/2)^2) - 3/4 e^(-8(x+1/2)^2)
    x = np.asarray(x, dtype=float)
    result = (
        np.exp(-15.0 * (x - 0.5) ** 2)
        + 0.5 * np.exp(-20.0 * (x - 0.5) ** 2)
        - 0.75 * np.exp(-8.0 * (x + 0.5) ** 2)
    )
    return float(result) if result.ndim == 0 else result


def sample_test_function(n, interval=DEFAULT_INTERVAL) -> Dataset:
    # n equally spaced samples of tau, both ends included.
    if int(n) != n or n < 2:
        raise ValueError(f"sample count ({n}) must be an integer >= 2")
    low, high = validate_interval(*interval)
    x = np.linspace(low, high, int(n))
    return Dataset(x, tau(x))


def noise_generator(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def add_uniform_noise(dataset: Dataset, amplitude, seed) -> Dataset:
    # Perturb every value by an independent uniform(-amplitude, amplitude) draw.
    amplitude = validate_noise_amplitude(amplitude)
    if amplitude == 0:
        return dataset.with_values(dataset.values)
    noise = noise_generator(seed).uniform(-amplitude, amplitude, size=len(dataset))
    logger.debug(
        f"Added uniform noise of amplitude {amplitude} to {len(dataset)} "
        f"samples (seed {seed})."
    )
    return dataset.with_values(dataset.values + noise)
