"""Seeded random states, observables and directions.

Everything draws from an explicit numpy Generator so that sweeps are
reproducible; no routine touches global random state.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .contexts import Observable, observable
from .correlations import Direction
from .states import DensityOperator, PureState


def random_pure_state(dim: int, rng: np.random.Generator) -> PureState:
    a = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(a / np.linalg.norm(a))


def random_density(dim: int, rng: np.random.Generator) -> DensityOperator:
    """Full-rank state from a complex Wishart draw."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityOperator(m / float(np.trace(m).real))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """exp(i H) of a random Hermitian generator."""
    h = random_hermitian(dim, rng)
    dec = la.spectral_decompose(h)
    return dec.apply_function(lambda a: np.exp(1j * a))


def random_nondegenerate_observable(
    dim: int, rng: np.random.Generator, label: str = ""
) -> tuple[Observable, np.ndarray, np.ndarray]:
    """Observable with unit eigenvalue gaps and known eigenvectors.

    Returns the observable together with the eigenvalues and the unitary
    whose columns are the construction's eigenvectors, so callers can
    cross-check eigensolver output against ground truth.
    """
    u = random_unitary(dim, rng)
    values = np.arange(1.0, dim + 1.0)
    m = (u * values) @ la.dagger(u)
    m = 0.5 * (m + la.dagger(m))
    return observable(m, label=label), values, u


def random_direction(rng: np.random.Generator) -> Direction:
    v = rng.standard_normal(3)
    n = float(np.linalg.norm(v))
    while n < 1e-12:
        v = rng.standard_normal(3)
        n = float(np.linalg.norm(v))
    return Direction(v[0] / n, v[1] / n, v[2] / n)
