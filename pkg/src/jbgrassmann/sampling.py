"""Seeded random generators for tests, demos and the self-test suite."""

from __future__ import annotations

import numpy as np


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_isometry(n: int, k: int, seed=None) -> np.ndarray:
    """``n x k`` matrix with orthonormal columns (Haar distributed)."""
    rng = rng_from(seed)
    q, r = np.linalg.qr(complex_gaussian(rng, (n, k)))
    # fix the phases so the distribution is Haar, not QR-biased
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(n: int, seed=None) -> np.ndarray:
    return random_isometry(n, n, seed)


def random_tripotent(n: int, k: int, seed=None) -> np.ndarray:
    """Random partial isometry of rank ``k``: ``W1 W2*`` with isometries ``W1, W2``."""
    rng = rng_from(seed)
    return random_isometry(n, k, rng) @ random_isometry(n, k, rng).conj().T


def random_matrix(n: int, seed=None) -> np.ndarray:
    return complex_gaussian(rng_from(seed), (n, n))


def random_hermitian(n: int, seed=None) -> np.ndarray:
    g = random_matrix(n, seed)
    return 0.5 * (g + g.conj().T)
