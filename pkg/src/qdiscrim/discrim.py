"""Minimum-error discrimination of two single-qubit channels.

The error probability of the best single-shot, unentangled strategy is
(1 - max{|p1 - p2|, max_{||r||=1} ||M r + c||}) / 2 with
M = p1 M1 - p2 M2 and c = p1 c1 - p2 c2.  When the prior bias already
dominates, guessing the likelier channel is optimal and no input state
or measurement is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import AffineChannel
from .errors import InvalidDistribution, NotUnital
from .linalg import hermitian_eig, spectral_norm
from .sphereopt import maximize_on_sphere

REGIME_GUESS_PRIOR = "guess_prior"
REGIME_MEASURE = "measure"

_AXES = ("x", "y", "z")
_AXIS_VECTORS = (np.array([1.0, 0.0, 0.0]),
                 np.array([0.0, 1.0, 0.0]),
                 np.array([0.0, 0.0, 1.0]))


@dataclass(frozen=True)
class PriorPair:
    """A priori probabilities (p1, p2) of the two channels."""

    p1: float
    p2: float

    def __post_init__(self):
        if self.p1 < 0.0 or self.p2 < 0.0:
            raise InvalidDistribution("priors must be nonnegative")
        if abs(self.p1 + self.p2 - 1.0) > 1e-12:
            raise InvalidDistribution(f"priors sum to {self.p1 + self.p2}, expected 1")

    @classmethod
    def from_p1(cls, p1: float) -> "PriorPair":
        return cls(float(p1), 1.0 - float(p1))

    @property
    def bias(self) -> float:
        return abs(self.p1 - self.p2)


@dataclass(eq=False)
class DiscriminationResult:
    """Outcome of a minimum-error discrimination problem."""

    p_error: float
    regime: str
    optimal_bloch: np.ndarray | None
    trace_norm_at_opt: float


def helstrom_trace_norm(r1, r2, priors: PriorPair) -> float:
    """||p1 rho1 - p2 rho2||_1 for qubit states with Bloch vectors r1, r2.

    Equals max{|p1 - p2|, ||p1 r1 - p2 r2||}; the Bloch form avoids any
    eigenvalue computation.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    for r in (r1, r2):
        if r.shape != (3,) or np.linalg.norm(r) > 1.0 + 1e-12:
            raise ValueError("Bloch vectors must be real 3-vectors inside the unit ball")
    return max(priors.bias, float(np.linalg.norm(priors.p1 * r1 - priors.p2 * r2)))


def max_abs_identity(a: float, b: float) -> float:
    """(|a+b| + |a-b|) / 2, which equals max{|a|, |b|} for real a, b."""
    value = (abs(a + b) + abs(a - b)) / 2.0
    assert abs(value - max(abs(a), abs(b))) <= 1e-12 * max(1.0, abs(a), abs(b))
    return value


def _verdict(bias: float, reach: float, priors: PriorPair,
             optimal: np.ndarray | None) -> DiscriminationResult:
    # Exact ties go to the guess-the-prior regime: no measurement needed.
    if bias >= reach:
        return DiscriminationResult(
            p_error=min(priors.p1, priors.p2),
            regime=REGIME_GUESS_PRIOR,
            optimal_bloch=None,
            trace_norm_at_opt=bias,
        )
    return DiscriminationResult(
        p_error=(1.0 - reach) / 2.0,
        regime=REGIME_MEASURE,
        optimal_bloch=optimal,
        trace_norm_at_opt=reach,
    )


def min_error_probability(e1: AffineChannel, e2: AffineChannel,
                          priors: PriorPair) -> DiscriminationResult:
    """Minimum single-shot error probability for two qubit channels."""
    m = priors.p1 * e1.m - priors.p2 * e2.m
    c = priors.p1 * e1.c - priors.p2 * e2.c
    best = maximize_on_sphere(m, c)
    return _verdict(priors.bias, best.value, priors, best.argmax)


def _unital_matrix(channel) -> np.ndarray:
    if isinstance(channel, AffineChannel):
        if float(np.max(np.abs(channel.c))) > 1e-12:
            raise NotUnital(f"channel shifts the Bloch ball by {channel.c}")
        return channel.m
    m = np.asarray(channel, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix or AffineChannel, got shape {m.shape}")
    return m


def min_error_unital(m1, m2, priors: PriorPair) -> DiscriminationResult:
    """Specialization for unital channels (c = 0): a spectral norm suffices."""
    diff = priors.p1 * _unital_matrix(m1) - priors.p2 * _unital_matrix(m2)
    reach = spectral_norm(diff)
    top = hermitian_eig(diff.T @ diff).eigenvectors[:, 0].real
    return _verdict(priors.bias, reach, priors, top)


def _check_pauli_distribution(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape != (4,):
        raise InvalidDistribution(f"expected 4 probabilities, got shape {q.shape}")
    if np.any(q < 0.0):
        raise InvalidDistribution("probabilities must be nonnegative")
    if abs(float(np.sum(q)) - 1.0) > 1e-12:
        raise InvalidDistribution(f"probabilities sum to {float(np.sum(q))}, expected 1")
    return q


def pauli_closed_form(q1, q2, priors: PriorPair) -> DiscriminationResult:
    """Closed form for two Pauli channels.

    With r_i = p1 q1_i - p2 q2_i the Bloch difference matrix is diagonal
    with entries (r0+r1-r2-r3, r0+r2-r1-r3, r0+r3-r1-r2), so its spectral
    norm is the largest |entry| and the optimal probe is the matching
    coordinate axis (first of x, y, z on ties).
    """
    q1 = _check_pauli_distribution(q1)
    q2 = _check_pauli_distribution(q2)
    r = priors.p1 * q1 - priors.p2 * q2
    entries = np.array([
        r[0] + r[1] - r[2] - r[3],
        r[0] + r[2] - r[1] - r[3],
        r[0] + r[3] - r[1] - r[2],
    ])
    axis = int(np.argmax(np.abs(entries)))
    reach = float(np.abs(entries)[axis])
    return _verdict(priors.bias, reach, priors, _AXIS_VECTORS[axis].copy())


def optimal_pauli_axis(q1, q2, priors: PriorPair) -> str | None:
    """Name of the optimal probe axis, or None in the guess-prior regime."""
    result = pauli_closed_form(q1, q2, priors)
    if result.regime == REGIME_GUESS_PRIOR:
        return None
    return _AXES[int(np.argmax(result.optimal_bloch))]


def pauli_sacchi_form(q1, q2, priors: PriorPair) -> float:
    """Pairwise-sum form of the Pauli channel error probability.

    Computes (1 - M) / 2 with
    M = max{|r0+r3|+|r1+r2|, |r0+r1|+|r2+r3|, |r0+r2|+|r1+r3|}.  Because
    (|a+b|+|a-b|)/2 = max{|a|,|b|} and p1 - p2 = r0+r1+r2+r3, this is
    identical to the closed form above; the agreement is asserted.
    """
    q1 = _check_pauli_distribution(q1)
    q2 = _check_pauli_distribution(q2)
    r = priors.p1 * q1 - priors.p2 * q2
    m_value = max(
        abs(r[0] + r[3]) + abs(r[1] + r[2]),
        abs(r[0] + r[1]) + abs(r[2] + r[3]),
        abs(r[0] + r[2]) + abs(r[1] + r[3]),
    )
    p_error = (1.0 - m_value) / 2.0
    assert abs(p_error - pauli_closed_form(q1, q2, priors).p_error) <= 1e-12
    return p_error
