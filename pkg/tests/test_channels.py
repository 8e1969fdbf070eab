import numpy as np
import pytest

from qdiscrim.channels import (
    AffineChannel,
    GpcChannel,
    KrausChannel,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PAULIS,
    bloch_to_density,
    density_to_bloch,
    gpc_basis,
    gpc_channel,
    gpc_to_kraus,
    characteristic_vector,
    kraus_to_affine,
    named_channel,
    pauli_channel,
    pauli_to_affine,
)
from qdiscrim.errors import (
    BasisNotOrthogonal,
    BasisNotPauli,
    BlochBallViolation,
    DimensionMismatch,
    InvalidDistribution,
    NotTracePreserving,
    ParamOutOfRange,
    UnknownName,
    UnsupportedDimension,
)
from qdiscrim.sphereopt import fibonacci_sphere


def test_bloch_to_density_poles_and_mixed():
    np.testing.assert_allclose(bloch_to_density([0, 0, 1]), np.diag([1.0, 0.0]))
    np.testing.assert_allclose(bloch_to_density([0, 0, 0]), np.eye(2) / 2.0)
    np.testing.assert_allclose(bloch_to_density([1, 0, 0]), np.full((2, 2), 0.5))


def test_bloch_to_density_rejects_long_vectors():
    with pytest.raises(ValueError):
        bloch_to_density([1.0, 1.0, 0.0])


def test_density_to_bloch_examples():
    np.testing.assert_allclose(density_to_bloch(np.eye(2) / 2.0), [0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(density_to_bloch(np.diag([0.0, 1.0])), [0, 0, -1])
    rho = (PAULI_I + 0.6 * PAULI_X + 0.8 * PAULI_Z) / 2.0
    np.testing.assert_allclose(density_to_bloch(rho), [0.6, 0.0, 0.8], atol=1e-15)
    with pytest.raises(DimensionMismatch):
        density_to_bloch(np.eye(3) / 3.0)


def test_bloch_round_trip(rng):
    for _ in range(200):
        r = rng.standard_normal(3)
        r *= rng.uniform(0.0, 1.0) / np.linalg.norm(r)
        np.testing.assert_allclose(density_to_bloch(bloch_to_density(r)), r, atol=1e-12)


def test_kraus_channel_rejects_incomplete_sets():
    with pytest.raises(NotTracePreserving):
        KrausChannel([0.5 * PAULI_I])


def test_kraus_to_affine_identity_and_sigma_x():
    ident = kraus_to_affine(KrausChannel([PAULI_I]))
    np.testing.assert_allclose(ident.m, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(ident.c, np.zeros(3), atol=1e-15)
    conj_x = kraus_to_affine(KrausChannel([PAULI_X]))
    np.testing.assert_allclose(conj_x.m, np.diag([1.0, -1.0, -1.0]), atol=1e-15)


def test_kraus_vs_direct_evolution(rng):
    # Affine action must match density-matrix evolution on pure states.
    from conftest import random_kraus_channel
    samples = fibonacci_sphere(200)
    for _ in range(10):
        ch = random_kraus_channel(rng)
        aff = kraus_to_affine(ch)
        for r in samples[::20]:
            evolved = density_to_bloch(ch.apply(bloch_to_density(r)))
            np.testing.assert_allclose(evolved, aff.apply(r), atol=1e-9)


_EQ14_LINES = {
    # name -> (diag of M as function of parameter, offset)
    "bit_flip": lambda p: ([1.0, 2 * p - 1, 2 * p - 1], [0, 0, 0]),
    "phase_flip": lambda p: ([2 * p - 1, 2 * p - 1, 1.0], [0, 0, 0]),
    "bit_phase_flip": lambda p: ([2 * p - 1, 1.0, 2 * p - 1], [0, 0, 0]),
    "depolarizing": lambda p: ([1 - p, 1 - p, 1 - p], [0, 0, 0]),
    "phase_damping": lambda p: ([np.sqrt(1 - p), np.sqrt(1 - p), 1.0], [0, 0, 0]),
    "amplitude_damping": lambda p: ([np.sqrt(1 - p), np.sqrt(1 - p), 1 - p], [0, 0, p]),
}


@pytest.mark.parametrize("name", sorted(_EQ14_LINES))
@pytest.mark.parametrize("param", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_named_channel_affine_table(name, param):
    aff = kraus_to_affine(named_channel(name, param))
    diag, offset = _EQ14_LINES[name](param)
    np.testing.assert_allclose(aff.m, np.diag(diag), atol=1e-12)
    np.testing.assert_allclose(aff.c, offset, atol=1e-12)


def test_named_channel_kraus_vs_affine_on_samples():
    for name in _EQ14_LINES:
        ch = named_channel(name, 0.3)
        aff = kraus_to_affine(ch)
        for r in fibonacci_sphere(200):
            evolved = density_to_bloch(ch.apply(bloch_to_density(r)))
            np.testing.assert_allclose(evolved, aff.apply(r), atol=1e-9)


def test_named_channel_rejections():
    with pytest.raises(UnknownName):
        named_channel("shear", 0.5)
    with pytest.raises(ParamOutOfRange):
        named_channel("bit_flip", 1.2)


def test_affine_channel_rejects_expanding_maps():
    with pytest.raises(BlochBallViolation):
        AffineChannel(1.5 * np.eye(3))
    with pytest.raises(BlochBallViolation):
        AffineChannel(np.eye(3), [0.0, 0.0, 0.5])


def test_pauli_to_affine_examples():
    np.testing.assert_allclose(pauli_to_affine(pauli_channel([1, 0, 0, 0])).m, np.eye(3))
    np.testing.assert_allclose(
        pauli_to_affine(pauli_channel([0, 0, 0, 1])).m, np.diag([-1.0, -1.0, 1.0]))
    np.testing.assert_allclose(
        pauli_to_affine(pauli_channel([0.25, 0.25, 0.25, 0.25])).m, np.zeros((3, 3)))


def test_pauli_to_affine_matches_kraus_route(rng):
    for _ in range(50):
        q = rng.dirichlet(np.ones(4))
        g = pauli_channel(q)
        direct = pauli_to_affine(g)
        via_kraus = kraus_to_affine(gpc_to_kraus(g))
        np.testing.assert_allclose(direct.m, via_kraus.m, atol=1e-12)
        np.testing.assert_allclose(direct.c, via_kraus.c, atol=1e-12)


def test_pauli_to_affine_rejects_other_bases():
    g = gpc_channel(2, [0.4, 0.3, 0.2, 0.1])  # shift/clock basis, not (I, X, Y, Z)
    with pytest.raises(BasisNotPauli):
        pauli_to_affine(g)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gpc_basis_trace_orthogonal(d):
    basis = gpc_basis(d)
    assert len(basis) == d * d
    stack = np.stack(basis)
    gram = np.einsum("mij,nij->mn", stack.conj(), stack)
    np.testing.assert_allclose(gram, d * np.eye(d * d), atol=1e-9)


def test_gpc_basis_d2_is_pauli_up_to_phase():
    basis = gpc_basis(2)
    for u, sigma in zip(basis, (PAULI_I, PAULI_X, PAULI_Z, PAULI_X @ PAULI_Z)):
        np.testing.assert_allclose(u, sigma, atol=1e-15)
    assert abs(np.trace(basis[1].conj().T @ basis[2])) < 1e-12


def test_gpc_basis_rejects_bad_dimension():
    with pytest.raises(UnsupportedDimension):
        gpc_basis(5)


def test_gpc_channel_validation():
    with pytest.raises(InvalidDistribution):
        gpc_channel(2, [0.5, 0.5, 0.5, -0.5])
    with pytest.raises(InvalidDistribution):
        gpc_channel(2, [0.5, 0.1, 0.1, 0.1])
    with pytest.raises(BasisNotOrthogonal):
        GpcChannel(2, [0.25] * 4, [PAULI_I, PAULI_I, PAULI_X, PAULI_Y])


def test_characteristic_vector_examples():
    np.testing.assert_allclose(characteristic_vector(pauli_channel([1, 0, 0, 0])), [1, 0, 0, 0])
    np.testing.assert_allclose(
        characteristic_vector(pauli_channel([0.5, 0.5, 0, 0])),
        [np.sqrt(0.5), np.sqrt(0.5), 0, 0])
    quarter = characteristic_vector(pauli_channel([0.25] * 4))
    np.testing.assert_allclose(quarter, [0.5] * 4)
    assert np.linalg.norm(quarter) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_gpc_unitality(rng, d):
    q = rng.dirichlet(np.ones(d * d))
    ch = gpc_to_kraus(gpc_channel(d, q))
    maximally_mixed = np.eye(d) / d
    np.testing.assert_allclose(ch.apply(maximally_mixed), maximally_mixed, atol=1e-9)
