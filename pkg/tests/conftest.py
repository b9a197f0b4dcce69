"""Shared fixtures and test-side oracles."""

import numpy as np
import pytest

from mrabeam import ExperimentConfig, WAVELENGTH, generate_scenario, grid_layout


@pytest.fixture
def default_config():
    return ExperimentConfig()


def make_scenario(seed: int, snr_db: float = 1.0, **config_kwargs):
    config = ExperimentConfig(**config_kwargs)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    return generate_scenario(rng, config, snr_db)


def random_complex(rng: np.random.Generator, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_feasible_vector(rng: np.random.Generator) -> np.ndarray:
    """Random interior-feasible decision vector for a 2x2 array at r=4,
    psi_max=pi/4: grid scaled to 1.5x pitch plus a jitter small enough to keep
    every pair above half-wavelength spacing."""
    base = grid_layout(2, 2, WAVELENGTH)
    n = 4
    x = base.x * 1.5 + rng.uniform(-0.05 * WAVELENGTH, 0.05 * WAVELENGTH, n)
    z = base.z * 1.5 + rng.uniform(-0.05 * WAVELENGTH, 0.05 * WAVELENGTH, n)
    psi_t = rng.uniform(-0.6, 0.6, n)
    psi_p = rng.uniform(-0.6, 0.6, n)
    return np.concatenate([x, z, psi_t, psi_p])
