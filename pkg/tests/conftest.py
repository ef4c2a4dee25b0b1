"""Shared random-object builders for the test suite."""

import numpy as np

from qiradar.qstate import DensityOperator, PureState


def random_density(rng, dim, dims=None):
    """Full-rank random density operator via a Wishart-style construction."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m /= m.trace().real
    return DensityOperator(m, dims if dims is not None else (dim,))


def random_pure(rng, dims):
    """Haar-ish random pure state from normalized complex Gaussians."""
    dim = int(np.prod(dims))
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(amps / np.linalg.norm(amps), tuple(dims))


def random_unitary(rng, dim):
    """Unitary from the QR factorization of a complex Gaussian matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(g)
    return q
