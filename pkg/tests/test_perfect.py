import numpy as np
import pytest

from qdiscrim.channels import (
    KrausChannel,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    gpc_channel,
    gpc_to_kraus,
    pauli_channel,
)
from qdiscrim.discrim import PriorPair
from qdiscrim.errors import BasisMismatch, DimensionMismatch, NotUnitary
from qdiscrim.oracle import helstrom_error_at
from qdiscrim.perfect import (
    METHOD_GPC_ORTHOGONALITY,
    METHOD_NUMERIC_SEARCH,
    METHOD_QUBIT_BLOCH,
    METHOD_UNITARY_POLYGON,
    NO,
    UNKNOWN,
    YES,
    cross_operators,
    gpc_perfect_entangled,
    maximally_entangled,
    numeric_isotropic_search,
    qubit_product_perfect,
    unitary_perfect,
)

HALF = PriorPair(0.5, 0.5)


def _max_cross_term(e1, e2, psi):
    ops = cross_operators(e1, e2)
    if psi.size == e1.dim ** 2:
        eye = np.eye(e1.dim)
        ops = [np.kron(op, eye) for op in ops]
    return max(abs(psi.conj() @ op @ psi) for op in ops)


def _haar_unitary(rng, d=2):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_cross_operators_examples():
    ident = KrausChannel([PAULI_I])
    ops = cross_operators(ident, ident)
    assert len(ops) == 1
    np.testing.assert_allclose(ops[0], PAULI_I)
    ops = cross_operators(KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]))
    np.testing.assert_allclose(ops[0], PAULI_X @ PAULI_Z)
    mixed = KrausChannel([np.sqrt(0.5) * PAULI_I, np.sqrt(0.5) * PAULI_X])
    ops = cross_operators(mixed, KrausChannel([PAULI_Z]))
    np.testing.assert_allclose(ops[0], np.sqrt(0.5) * PAULI_Z)
    np.testing.assert_allclose(ops[1], np.sqrt(0.5) * PAULI_X @ PAULI_Z)


def test_unitary_perfect_sigma_x_vs_sigma_z():
    verdict = unitary_perfect(PAULI_X, PAULI_Z)
    assert verdict.distinguishable == YES
    assert verdict.method == METHOD_UNITARY_POLYGON
    assert abs(np.linalg.norm(verdict.certificate) - 1.0) < 1e-12
    w = PAULI_X.conj().T @ PAULI_Z
    assert abs(verdict.certificate.conj() @ w @ verdict.certificate) < 1e-8


def test_unitary_perfect_negative_cases():
    assert unitary_perfect(PAULI_I, PAULI_I).distinguishable == NO
    phase = np.diag([1.0, np.exp(1j * np.pi / 2)])
    assert unitary_perfect(PAULI_I, phase).distinguishable == NO
    # a half-turn makes the eigenvalue chord pass through the origin
    assert unitary_perfect(PAULI_I, PAULI_Z).distinguishable == YES


def test_unitary_perfect_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        unitary_perfect(0.5 * PAULI_I, PAULI_I)


def test_unitary_perfect_random_certificates(rng):
    hits = 0
    for _ in range(100):
        u1, u2 = _haar_unitary(rng, 3), _haar_unitary(rng, 3)
        verdict = unitary_perfect(u1, u2)
        if verdict.distinguishable == YES:
            hits += 1
            w = u1.conj().T @ u2
            assert abs(verdict.certificate.conj() @ w @ verdict.certificate) < 1e-8
    assert hits > 0


def test_qubit_product_perfect_examples():
    verdict = qubit_product_perfect(KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]))
    assert verdict.distinguishable == YES
    assert verdict.method == METHOD_QUBIT_BLOCH
    assert _max_cross_term(KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]),
                           verdict.certificate) < 1e-8

    # mixture of all three Paulis vs identity forces r = 0: impossible
    mixed = gpc_to_kraus(pauli_channel([0.0, 0.2, 0.3, 0.5]))
    ident = KrausChannel([PAULI_I])
    assert qubit_product_perfect(mixed, ident).distinguishable == NO
    assert qubit_product_perfect(ident, ident).distinguishable == NO


def test_qubit_product_agrees_with_unitary_polygon(rng):
    for _ in range(200):
        u1, u2 = _haar_unitary(rng), _haar_unitary(rng)
        a = unitary_perfect(u1, u2).distinguishable
        b = qubit_product_perfect(KrausChannel([u1]), KrausChannel([u2])).distinguishable
        assert a == b


def test_gpc_perfect_entangled_examples():
    yes = gpc_perfect_entangled(pauli_channel([1, 0, 0, 0]), pauli_channel([0, 1, 0, 0]))
    assert yes.distinguishable == YES
    assert yes.method == METHOD_GPC_ORTHOGONALITY
    np.testing.assert_allclose(yes.certificate,
                               np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)
    no = gpc_perfect_entangled(pauli_channel([0.5, 0.5, 0, 0]), pauli_channel([0.5, 0, 0.5, 0]))
    assert no.distinguishable == NO
    mixed = pauli_channel([0.0, 0.2, 0.3, 0.5])
    assert gpc_perfect_entangled(mixed, pauli_channel([1, 0, 0, 0])).distinguishable == YES


def test_gpc_perfect_entangled_rejects_mismatched_bases():
    with pytest.raises(BasisMismatch):
        gpc_perfect_entangled(pauli_channel([1, 0, 0, 0]), gpc_channel(2, [1, 0, 0, 0]))
    with pytest.raises(DimensionMismatch):
        gpc_perfect_entangled(gpc_channel(2, [1, 0, 0, 0]), gpc_channel(3, [1] + [0] * 8))


def test_numeric_search_examples():
    found = numeric_isotropic_search([PAULI_Y], entangled=False, seed=1, restarts=4)
    assert found.distinguishable == YES
    assert abs(found.certificate.conj() @ PAULI_Y @ found.certificate) < 1e-8
    blocked = numeric_isotropic_search([PAULI_I], entangled=False, seed=1, restarts=2)
    assert blocked.distinguishable == UNKNOWN
    assert blocked.certificate is None


def test_numeric_search_finds_entangled_counterexample_certificate():
    mixed = gpc_to_kraus(pauli_channel([0.0, 0.2, 0.3, 0.5]))
    ident = KrausChannel([PAULI_I])
    ops = cross_operators(mixed, ident)
    verdict = numeric_isotropic_search(ops, entangled=True, seed=3, restarts=8)
    assert verdict.distinguishable == YES
    loss = sum(abs(verdict.certificate.conj() @ np.kron(op, np.eye(2)) @ verdict.certificate) ** 2
               for op in ops)
    assert loss < 1e-16


def test_numeric_search_deterministic():
    ops = cross_operators(KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]))
    a = numeric_isotropic_search(ops, entangled=False, seed=11, restarts=4)
    b = numeric_isotropic_search(ops, entangled=False, seed=11, restarts=4)
    assert np.array_equal(a.certificate, b.certificate)


def test_soundness_certificates_reach_zero_error():
    # every yes verdict must produce a state with vanishing Helstrom error
    cases = []
    verdict = unitary_perfect(PAULI_X, PAULI_Z)
    cases.append((KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]), verdict))
    verdict = qubit_product_perfect(KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]))
    cases.append((KrausChannel([PAULI_X]), KrausChannel([PAULI_Z]), verdict))
    g1, g2 = pauli_channel([0.0, 0.2, 0.3, 0.5]), pauli_channel([1, 0, 0, 0])
    verdict = gpc_perfect_entangled(g1, g2)
    cases.append((gpc_to_kraus(g1), gpc_to_kraus(g2), verdict))
    ops = cross_operators(gpc_to_kraus(g1), gpc_to_kraus(g2))
    verdict = numeric_isotropic_search(ops, entangled=True, seed=5, restarts=8)
    cases.append((gpc_to_kraus(g1), gpc_to_kraus(g2), verdict))
    for e1, e2, verdict in cases:
        assert verdict.distinguishable == YES
        assert helstrom_error_at(e1, e2, HALF, verdict.certificate) < 1e-8


def test_hierarchy_product_implies_entangled():
    # product-perfect pairs must admit an entangled certificate as well
    pairs = [
        (KrausChannel([PAULI_X]), KrausChannel([PAULI_Z])),
        (gpc_to_kraus(pauli_channel([1, 0, 0, 0])), gpc_to_kraus(pauli_channel([0, 1, 0, 0]))),
        (gpc_to_kraus(pauli_channel([0, 0.5, 0.5, 0])), KrausChannel([PAULI_I])),
    ]
    for e1, e2 in pairs:
        assert qubit_product_perfect(e1, e2).distinguishable == YES
        ops = cross_operators(e1, e2)
        entangled = numeric_isotropic_search(ops, entangled=True, seed=7, restarts=8)
        assert entangled.distinguishable == YES


def test_gpc_decider_agrees_with_numeric_search(rng):
    # random d=2 pairs with randomized supports, both verdict kinds included
    agree_yes = agree_no = 0
    for trial in range(200):
        mask1 = np.zeros(4)
        mask1[rng.choice(4, size=int(rng.integers(1, 4)), replace=False)] = 1.0
        if rng.uniform() < 0.5:
            mask2 = 1.0 - mask1  # disjoint supports -> orthogonal
        else:
            mask2 = np.zeros(4)
            mask2[rng.choice(4, size=int(rng.integers(1, 5)), replace=False)] = 1.0
        q1 = rng.dirichlet(np.ones(4)) * mask1
        q2 = rng.dirichlet(np.ones(4)) * mask2
        if q1.sum() == 0 or q2.sum() == 0:
            continue
        q1, q2 = q1 / q1.sum(), q2 / q2.sum()
        g1, g2 = pauli_channel(q1), pauli_channel(q2)
        expected = gpc_perfect_entangled(g1, g2).distinguishable
        ops = cross_operators(gpc_to_kraus(g1), gpc_to_kraus(g2))
        searched = numeric_isotropic_search(ops, entangled=True, seed=trial, restarts=4)
        if expected == YES:
            assert searched.distinguishable == YES
            agree_yes += 1
        else:
            assert searched.distinguishable == UNKNOWN
            agree_no += 1
    assert agree_yes > 20 and agree_no > 20


def test_maximally_entangled_state():
    psi = maximally_entangled(3)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-15
    np.testing.assert_allclose(psi.reshape(3, 3), np.eye(3) / np.sqrt(3))
