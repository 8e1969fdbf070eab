"""Dense linear algebra for small complex matrices.

Everything here targets operators of dimension <= 16 (qubits, qudits up
to d = 4 and their pairwise tensor products), so the solvers favour
robustness and bit-reproducibility over asymptotic speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-9

_OFF_DIAG_TARGET = 1e-12
_MAX_SWEEPS = 100
_PHASE_TOL = 1e-12
_HULL_DIST_TOL = 1e-10
_HULL_DEDUP_TOL = 1e-12


def as_complex_matrix(a) -> np.ndarray:
    """Coerce input to a square complex matrix (copy)."""
    mat = np.array(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def hermiticity_defect(a) -> float:
    """Largest absolute entry of a - a^dagger."""
    a = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Spectrum of a Hermitian matrix; eigenvalues sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column j pairs with eigenvalues[j]


def _off_diag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _jacobi_rotate(a: np.ndarray, q: np.ndarray, p: int, r: int) -> None:
    """Zero out a[p, r] (and a[r, p]) with a unitary plane rotation."""
    apr = a[p, r]
    mag = abs(apr)
    if mag == 0.0:
        return
    w = apr / mag
    tau = (a[p, p].real - a[r, r].real) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + np.hypot(1.0, tau))
    else:
        t = -1.0 / (-tau + np.hypot(1.0, tau))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c

    col_p = a[:, p].copy()
    col_r = a[:, r].copy()
    a[:, p] = c * col_p + s * np.conj(w) * col_r
    a[:, r] = -s * w * col_p + c * col_r
    row_p = a[p, :].copy()
    row_r = a[r, :].copy()
    a[p, :] = c * row_p + s * w * row_r
    a[r, :] = -s * np.conj(w) * row_p + c * row_r
    a[p, r] = 0.0
    a[r, p] = 0.0
    a[p, p] = a[p, p].real
    a[r, r] = a[r, r].real

    q_p = q[:, p].copy()
    q_r = q[:, r].copy()
    q[:, p] = c * q_p + s * np.conj(w) * q_r
    q[:, r] = -s * w * q_p + c * q_r


def hermitian_eig(a) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Sweeps run in a fixed (row-major) order until the off-diagonal
    Frobenius norm drops below 1e-12, capped at 100 sweeps.  Eigenvalues
    are returned in descending order; each eigenvector is phased so its
    first component of magnitude > 1e-12 is real positive, which makes
    the output deterministic for identical input.
    """
    mat = as_complex_matrix(a)
    defect = hermiticity_defect(mat)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {defect:.3e}")
    n = mat.shape[0]
    work = (mat + mat.conj().T) / 2.0
    q = np.eye(n, dtype=complex)
    for _ in range(_MAX_SWEEPS):
        if _off_diag_norm(work) < _OFF_DIAG_TARGET:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                _jacobi_rotate(work, q, p, r)
    evals = np.diag(work).real.copy()
    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    vecs = q[:, order].copy()
    for j in range(n):
        col = vecs[:, j]
        nz = np.flatnonzero(np.abs(col) > _PHASE_TOL)
        if nz.size:
            pivot = col[nz[0]]
            vecs[:, j] = col * (np.conj(pivot) / abs(pivot))
    return EigenResult(evals, vecs)


def trace_norm_hermitian(a) -> float:
    """Trace norm of a Hermitian matrix: sum of |eigenvalues|."""
    return float(np.sum(np.abs(hermitian_eig(a).eigenvalues)))


def spectral_norm(m) -> float:
    """Largest singular value of a real matrix, via the top eigenvalue of m^T m."""
    m = np.asarray(m, dtype=float)
    gram = m.T @ m
    top = hermitian_eig(gram).eigenvalues[0]
    return float(np.sqrt(max(top, 0.0)))


def _dedup_points(xy: np.ndarray) -> np.ndarray:
    kept: list[np.ndarray] = []
    for point in xy:
        if not any(np.hypot(*(point - other)) < _HULL_DEDUP_TOL for other in kept):
            kept.append(point)
    return np.array(kept)


def _monotone_chain(xy: np.ndarray) -> np.ndarray:
    pts = sorted(map(tuple, xy))

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple] = []
    for point in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], point) <= 0:
            lower.pop()
        lower.append(point)
    upper: list[tuple] = []
    for point in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], point) <= 0:
            upper.pop()
        upper.append(point)
    return np.array(lower[:-1] + upper[:-1])


def _point_segment_distance(a: np.ndarray, b: np.ndarray) -> float:
    seg = b - a
    seg_len2 = seg @ seg
    if seg_len2 == 0.0:
        return float(np.hypot(*a))
    t = min(1.0, max(0.0, -(a @ seg) / seg_len2))
    return float(np.hypot(*(a + t * seg)))


def hull_contains_origin(points) -> bool:
    """True iff 0 lies in the convex hull of the given complex points.

    Boundary counts as contained, with tolerance 1e-10 on signed
    distances to the hull edges.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex)).ravel()
    if pts.size == 0:
        raise ValueError("need at least one point")
    xy = _dedup_points(np.column_stack([pts.real, pts.imag]))
    if len(xy) == 1:
        return float(np.hypot(*xy[0])) <= _HULL_DIST_TOL
    hull = _monotone_chain(xy)
    if len(hull) <= 2:
        # Degenerate (collinear) hull: treat as the extreme segment.
        lo = min(map(tuple, xy))
        hi = max(map(tuple, xy))
        return _point_segment_distance(np.array(lo), np.array(hi)) <= _HULL_DIST_TOL
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        edge = b - a
        cross = edge[0] * (-a[1]) - edge[1] * (-a[0])
        if cross / np.hypot(*edge) < -_HULL_DIST_TOL:
            return False
    return True
