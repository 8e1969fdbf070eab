import numpy as np
import pytest

from qdiscrim.channels import KrausChannel


def random_kraus_channel(rng, dim=2, n_ops=None):
    """Random trace-preserving channel: Gaussian operators renormalised
    through S^(-1/2) with S = sum E^dag E."""
    k = int(rng.integers(1, 5)) if n_ops is None else n_ops
    raw = rng.standard_normal((k, dim, dim)) + 1j * rng.standard_normal((k, dim, dim))
    gram = np.einsum("kij,kil->jl", raw.conj(), raw)
    evals, evecs = np.linalg.eigh(gram)
    inv_sqrt = evecs @ np.diag(evals ** -0.5) @ evecs.conj().T
    return KrausChannel(raw @ inv_sqrt)


def random_simplex(rng, n):
    return rng.dirichlet(np.ones(n))


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
