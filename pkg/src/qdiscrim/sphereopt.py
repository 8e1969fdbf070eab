"""Global maximization of ||m r + c|| over the unit sphere ||r|| = 1.

Stationary points of the Lagrangian satisfy (m^T m) r + m^T c = lam * r.
In the eigenbasis of A = m^T m (eigenvalues d1 >= d2 >= d3, coordinates
b = Q^T m^T c) this becomes r_i = b_i / (lam - d_i) together with the
secular equation sum_i b_i^2 / (lam - d_i)^2 = 1, and the global maximum
is the unique root with lam >= d1.  When b has no component along the
top eigenspace (the hard case) the solution may need an eigenspace
component to reach the sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eig

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

_DEGENERACY_TOL = 1e-10
_HARD_CASE_TOL = 1e-12
_SECULAR_VALUE_TOL = 1e-13
_SECULAR_BRACKET_TOL = 1e-15
_SIGN_TOL = 1e-12


def fibonacci_sphere(n: int) -> np.ndarray:
    """n deterministic, roughly equidistributed points on the unit sphere."""
    k = np.arange(n)
    z = 1.0 - 2.0 * (k + 0.5) / n
    rad = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    theta = _GOLDEN_ANGLE * k
    return np.column_stack([rad * np.cos(theta), rad * np.sin(theta), z])


@dataclass(frozen=True, eq=False)
class SphereMaxResult:
    """Maximum of ||m r + c|| on the unit sphere with its certificate."""

    value: float
    argmax: np.ndarray
    multiplier: float
    hard_case: bool


def _coerce(m, c) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    c = np.zeros(3) if c is None else np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise ValueError(f"expected a 3-vector offset, got shape {c.shape}")
    return m, c


def _secular_root(d: np.ndarray, b: np.ndarray) -> float:
    """Unique root lam > d[0] of sum b_i^2 / (lam - d_i)^2 = 1.

    Safeguarded bisection-Newton: the function is convex decreasing on
    (d[0], inf), so Newton steps are kept inside a shrinking bracket.
    """
    nz = b != 0.0
    bsq = b[nz] ** 2
    dn = d[nz]

    def g(lam: float) -> float:
        return float(np.sum(bsq / (lam - dn) ** 2))

    lo = d[0] + 1e-14
    hi = d[0] + float(np.linalg.norm(b)) + 1.0
    if g(lo) < 1.0:
        return lo
    while g(hi) >= 1.0:  # pragma: no cover - bracket end is already safe
        hi = d[0] + 2.0 * (hi - d[0])
    lam = 0.5 * (lo + hi)
    for _ in range(200):
        h = g(lam) - 1.0
        if abs(h) < _SECULAR_VALUE_TOL:
            break
        if h > 0.0:
            lo = lam
        else:
            hi = lam
        if hi - lo < _SECULAR_BRACKET_TOL:
            break
        slope = float(np.sum(-2.0 * bsq / (lam - dn) ** 3))
        newton = lam - h / slope if slope != 0.0 else lam
        lam = newton if lo < newton < hi else 0.5 * (lo + hi)
    return lam


def maximize_on_sphere(m, c=None) -> SphereMaxResult:
    """Global maximum of ||m r + c|| over unit vectors r.

    Solves the secular equation exactly; in the hard case (offset
    orthogonal to the top eigenspace of m^T m) the missing norm is
    supplied along the top eigenspace.  The returned argmax follows a
    deterministic sign convention: whenever both signs achieve the
    maximum, the first component of magnitude > 1e-12 is made positive.
    """
    m, c = _coerce(m, c)
    gram = m.T @ m
    eig = hermitian_eig(gram)
    d = eig.eigenvalues
    basis = eig.eigenvectors.real
    b = basis.T @ (m.T @ c)

    top = (d[0] - d) < _DEGENERACY_TOL
    hard = float(np.linalg.norm(b[top])) < _HARD_CASE_TOL
    if not hard:
        lam = _secular_root(d, b)
        u = b / (lam - d)
    else:
        b_eff = np.where(top, 0.0, b)
        rest = ~top
        g_limit = float(np.sum(b_eff[rest] ** 2 / (d[0] - d[rest]) ** 2)) if rest.any() else 0.0
        if g_limit >= 1.0:
            lam = _secular_root(d, b_eff)
            u = np.zeros(3)
            u[rest] = b_eff[rest] / (lam - d[rest])
        else:
            lam = d[0]
            u = np.zeros(3)
            u[rest] = b[rest] / (d[0] - d[rest])
            deficit = math.sqrt(max(0.0, 1.0 - float(u @ u)))
            u[np.flatnonzero(top)[-1]] = deficit
    r = basis @ u
    norm_r = float(np.linalg.norm(r))
    r = r / norm_r if norm_r > 0.0 else np.array([0.0, 0.0, 1.0])

    value = float(np.linalg.norm(m @ r + c))
    flipped = float(np.linalg.norm(m @ -r + c))
    if abs(flipped - value) <= _SIGN_TOL * max(1.0, value):
        nz = np.flatnonzero(np.abs(r) > _SIGN_TOL)
        if nz.size and r[nz[0]] < 0.0:
            r = -r
    return SphereMaxResult(value=value, argmax=r, multiplier=float(lam), hard_case=bool(hard))


def grid_oracle(m, c=None, n: int = 10000) -> float:
    """Sampled maximum of ||m r + c||, independent of the secular solver.

    Takes the best of n Fibonacci-sphere points and polishes it with 20
    projected-gradient ascent steps (adaptive step, backtracking), which
    keeps the whole procedure deterministic for fixed n.
    """
    m, c = _coerce(m, c)
    if n < 100:
        raise ValueError("grid oracle needs n >= 100 sample points")
    pts = fibonacci_sphere(n)
    vals = np.linalg.norm(pts @ m.T + c, axis=1)
    best_idx = int(np.argmax(vals))
    r = pts[best_idx]
    best = float(vals[best_idx])

    gram = m.T @ m
    drift = m.T @ c
    step = 1.0
    for _ in range(20):
        grad = 2.0 * (gram @ r + drift)
        trial = step
        accepted = None
        for _ in range(60):
            cand = r + trial * grad
            norm_cand = float(np.linalg.norm(cand))
            if norm_cand > 1e-300:
                cand = cand / norm_cand
                val = float(np.linalg.norm(m @ cand + c))
                if val > best:
                    accepted = (cand, val, trial)
                    break
            trial /= 2.0
        if accepted is None:
            break
        r, best, used = accepted
        step = used * 2.0
    return best
