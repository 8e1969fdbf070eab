"""Qubit states and channel representations.

Covers the Bloch-vector / density-matrix correspondence, Kraus
(operator-sum) channels, their affine Bloch-ball action r -> M r + c,
the six standard named qubit channels, and mixtures of trace-orthogonal
unitaries (Pauli channels and their qudit generalization).
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import (
    BasisNotOrthogonal,
    BasisNotPauli,
    BlochBallViolation,
    DimensionMismatch,
    InvalidDistribution,
    NotHermitian,
    NotTracePreserving,
    NotUnitary,
    ParamOutOfRange,
    UnknownName,
    UnsupportedDimension,
)
from .sphereopt import fibonacci_sphere

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)

BLOCH_NORM_TOL = 1e-12
COMPLETENESS_TOL = 1e-9
_BALL_TOL = 1e-9
_BALL_SAMPLES = 200


def _as_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"expected a real 3-vector, got shape {r.shape}")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + BLOCH_NORM_TOL:
        raise ValueError(f"Bloch vector norm {norm} exceeds 1")
    return r


def bloch_to_density(r) -> np.ndarray:
    """Density matrix (I + r . sigma) / 2 of the Bloch vector r."""
    r = _as_bloch(r)
    return (PAULI_I + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z) / 2.0


def validate_density(rho) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix."""
    rho = linalg.as_complex_matrix(rho)
    defect = linalg.hermiticity_defect(rho)
    if defect > 1e-9:
        raise NotHermitian(f"density matrix deviates from Hermitian by {defect:.3e}")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > 1e-9:
        raise ValueError(f"density matrix has trace {trace}, expected 1")
    smallest = linalg.hermitian_eig(rho).eigenvalues[-1]
    if smallest < -1e-9:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return rho


def density_to_bloch(rho) -> np.ndarray:
    """Bloch vector r_k = Tr(sigma_k rho) of a qubit density matrix."""
    rho = validate_density(rho)
    if rho.shape[0] != 2:
        raise DimensionMismatch(f"Bloch vectors require dimension 2, got {rho.shape[0]}")
    return np.array([float(np.trace(sigma @ rho).real) for sigma in PAULIS[1:]])


class KrausChannel:
    """Trace-preserving operator-sum map rho -> sum_i E_i rho E_i^dagger."""

    def __init__(self, ops):
        arr = np.array(ops, dtype=complex)
        if arr.ndim != 3 or arr.shape[0] == 0 or arr.shape[1] != arr.shape[2]:
            raise ValueError(f"expected a nonempty stack of square operators, got shape {arr.shape}")
        completeness = np.einsum("kij,kil->jl", arr.conj(), arr)
        defect = float(np.max(np.abs(completeness - np.eye(arr.shape[1]))))
        if defect > COMPLETENESS_TOL:
            raise NotTracePreserving(f"sum E^dag E deviates from identity by {defect:.3e}")
        self.ops = arr
        self.dim = int(arr.shape[1])

    def apply(self, rho) -> np.ndarray:
        """Evolve a matrix through the operator sum."""
        rho = np.asarray(rho, dtype=complex)
        return np.einsum("kij,jl,kml->im", self.ops, rho, self.ops.conj())


class AffineChannel:
    """Bloch-ball action r -> m r + c of a qubit channel."""

    def __init__(self, m, c=None):
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        c = np.zeros(3) if c is None else np.asarray(c, dtype=float)
        if c.shape != (3,):
            raise ValueError(f"expected a 3-vector offset, got shape {c.shape}")
        reach = float(np.max(np.linalg.norm(fibonacci_sphere(_BALL_SAMPLES) @ m.T + c, axis=1)))
        if reach > 1.0 + _BALL_TOL:
            raise BlochBallViolation(f"map sends the Bloch ball out to radius {reach}")
        self.m = m
        self.c = c

    def apply(self, r) -> np.ndarray:
        return self.m @ np.asarray(r, dtype=float) + self.c


def kraus_to_affine(ch: KrausChannel) -> AffineChannel:
    """Affine Bloch representation (M, c) computed from the operator sum.

    M_kl = Tr(sigma_k sum_i E_i sigma_l E_i^dag) / 2 and
    c_k = Tr(sigma_k sum_i E_i E_i^dag) / 2.
    """
    if ch.dim != 2:
        raise DimensionMismatch(f"affine Bloch form requires dimension 2, got {ch.dim}")
    m = np.empty((3, 3))
    for l in range(3):
        image = ch.apply(PAULIS[l + 1])
        for k in range(3):
            m[k, l] = float(np.trace(PAULIS[k + 1] @ image).real) / 2.0
    image_id = ch.apply(PAULI_I)
    c = np.array([float(np.trace(PAULIS[k + 1] @ image_id).real) / 2.0 for k in range(3)])
    return AffineChannel(m, c)


_NAMED_CHANNELS = ("bit_flip", "phase_flip", "bit_phase_flip",
                   "depolarizing", "phase_damping", "amplitude_damping")


def named_channel(name: str, param: float) -> KrausChannel:
    """Standard single-qubit channel by name, with parameter in [0, 1]."""
    if name not in _NAMED_CHANNELS:
        raise UnknownName(f"unknown channel {name!r}; choose from {_NAMED_CHANNELS}")
    if not 0.0 <= param <= 1.0:
        raise ParamOutOfRange(f"channel parameter must lie in [0, 1], got {param}")
    p = param
    if name == "bit_flip":
        ops = [np.sqrt(p) * PAULI_I, np.sqrt(1.0 - p) * PAULI_X]
    elif name == "phase_flip":
        ops = [np.sqrt(p) * PAULI_I, np.sqrt(1.0 - p) * PAULI_Z]
    elif name == "bit_phase_flip":
        ops = [np.sqrt(p) * PAULI_I, np.sqrt(1.0 - p) * PAULI_Y]
    elif name == "depolarizing":
        ops = [np.sqrt(1.0 - 3.0 * p / 4.0) * PAULI_I,
               np.sqrt(p / 4.0) * PAULI_X,
               np.sqrt(p / 4.0) * PAULI_Y,
               np.sqrt(p / 4.0) * PAULI_Z]
    elif name == "phase_damping":
        ops = [np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex),
               np.array([[0.0, 0.0], [0.0, np.sqrt(p)]], dtype=complex)]
    else:  # amplitude_damping
        ops = [np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex),
               np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=complex)]
    return KrausChannel(ops)


def gpc_basis(d: int) -> list[np.ndarray]:
    """Shift/clock unitary basis X^a Z^b with Tr(U^dag U') = d * delta.

    X|k> = |k+1 mod d>, Z|k> = w^k |k> with w = exp(2 pi i / d).  For
    d = 2 this reproduces the Pauli set up to global phase.
    """
    if not 2 <= d <= 4:
        raise UnsupportedDimension(f"basis defined for 2 <= d <= 4, got {d}")
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            for b in range(d) for a in range(d)]


class GpcChannel:
    """Mixture of trace-orthogonal unitaries rho -> sum_n q_n U_n rho U_n^dag."""

    def __init__(self, d: int, q, basis):
        if d < 2:
            raise UnsupportedDimension(f"dimension must be >= 2, got {d}")
        q = np.asarray(q, dtype=float)
        if q.shape != (d * d,):
            raise InvalidDistribution(f"expected {d * d} probabilities, got shape {q.shape}")
        if np.any(q < 0.0):
            raise InvalidDistribution("probabilities must be nonnegative")
        if abs(float(np.sum(q)) - 1.0) > 1e-12:
            raise InvalidDistribution(f"probabilities sum to {float(np.sum(q))}, expected 1")
        ops = [linalg.as_complex_matrix(u) for u in basis]
        if len(ops) != d * d or any(u.shape != (d, d) for u in ops):
            raise ValueError(f"basis must hold {d * d} unitaries of dimension {d}")
        stack = np.stack(ops)
        for u in ops:
            defect = float(np.max(np.abs(u.conj().T @ u - np.eye(d))))
            if defect > 1e-9:
                raise NotUnitary(f"basis element deviates from unitary by {defect:.3e}")
        gram = np.einsum("mij,nij->mn", stack.conj(), stack)
        if float(np.max(np.abs(gram - d * np.eye(d * d)))) > 1e-9:
            raise BasisNotOrthogonal("basis is not trace-orthogonal: Tr(U_m^dag U_n) != d delta_mn")
        self.d = int(d)
        self.q = q
        self.basis = stack


def pauli_channel(q) -> GpcChannel:
    """Qubit Pauli channel sum_i q_i sigma_i rho sigma_i."""
    return GpcChannel(2, q, PAULIS)


def gpc_channel(d: int, q) -> GpcChannel:
    """Generalized Pauli channel over the shift/clock basis of dimension d."""
    return GpcChannel(d, q, gpc_basis(d))


def pauli_to_affine(g: GpcChannel) -> AffineChannel:
    """Diagonal Bloch action diag(2(q0+q1)-1, 2(q0+q2)-1, 2(q0+q3)-1) of a Pauli channel."""
    if g.d != 2:
        raise DimensionMismatch(f"Pauli form requires dimension 2, got {g.d}")
    for u, sigma in zip(g.basis, PAULIS):
        if float(np.max(np.abs(u - sigma))) > 1e-9:
            raise BasisNotPauli("channel basis is not (I, X, Y, Z)")
    deltas = np.array([2.0 * (g.q[0] + g.q[i]) - 1.0 for i in (1, 2, 3)])
    return AffineChannel(np.diag(deltas), np.zeros(3))


def characteristic_vector(g: GpcChannel) -> np.ndarray:
    """Unit vector (sqrt(q_0), ..., sqrt(q_{d^2-1})) identifying the channel."""
    return np.sqrt(g.q)


def gpc_to_kraus(g: GpcChannel) -> KrausChannel:
    """Operator-sum elements {sqrt(q_n) U_n} of a generalized Pauli channel."""
    return KrausChannel(np.sqrt(g.q)[:, None, None] * g.basis)
