"""Residual-minimizing Krylov solver for antilinear systems M conj(x) = b.

The Arnoldi recurrence for the antilinear map w -> M @ conj(w) produces an
orthonormal basis V and a Hessenberg matrix H with real positive
subdiagonal, M @ conj(V_k) = V_{k+1} H_k.  Writing x = V_k conj(z) turns
the residual into || ||b|| e1 - H_k z ||, a small least-squares problem
solved progressively with plane rotations.  The k-th residual equals the
minimum of ||p(M tau) b|| over polynomials p of degree at most k in the
mixed monomials with p(0) = 1; on spectra symmetric under lam -> -lam
with a real right-hand side the odd-step minimizers gain nothing, so the
residual drops only at every other step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError, ZeroRhs

__all__ = [
    "ArnoldiFactorization",
    "SolveResult",
    "StaircaseReport",
    "arnoldi",
    "solve",
    "residual_oracle",
    "staircase_demo",
]

BREAKDOWN_RTOL = 1e-12
STAGNATION_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class ArnoldiFactorization:
    """Orthonormal basis V and Hessenberg H with M @ conj(V[:, :k]) = V @ H.

    On early termination (invariant subspace) H is square and V has as
    many columns as H; otherwise H has one extra row and V one extra
    column.
    """

    V: np.ndarray
    H: np.ndarray
    breakdown: bool


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Solution, residual-norm history r_0 >= r_1 >= ..., iteration count."""

    x: np.ndarray
    residuals: np.ndarray
    iterations: int
    stagnated: bool


def _checked_system(M, b) -> tuple[np.ndarray, np.ndarray, float]:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError("matrix must be square")
    b = np.asarray(b, dtype=complex).ravel()
    if b.shape[0] != M.shape[0]:
        raise ValidationError("right-hand side has wrong length")
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        raise ZeroRhs("right-hand side is zero")
    return M, b, beta


def arnoldi(M, b, k: int) -> ArnoldiFactorization:
    """k steps of the Arnoldi recurrence for w -> M @ conj(w).

    Orthogonalization uses two passes of classical Gram-Schmidt; the
    subdiagonal entries are the (real, positive) residual norms.  Stops
    early when the subdiagonal entry falls below 1e-12 times the matrix
    scale.
    """
    M, b, beta = _checked_system(M, b)
    n = M.shape[0]
    if not (1 <= k <= n):
        raise ValidationError("step count must be between 1 and n")
    tol_b = BREAKDOWN_RTOL * max(1.0, float(np.linalg.norm(M)))
    V = np.zeros((n, k + 1), dtype=complex)
    H = np.zeros((k + 1, k), dtype=complex)
    V[:, 0] = b / beta
    for j in range(k):
        w = M @ np.conj(V[:, j])
        basis = V[:, : j + 1]
        h = basis.conj().T @ w
        w = w - basis @ h
        h2 = basis.conj().T @ w
        w = w - basis @ h2
        H[: j + 1, j] = h + h2
        hs = float(np.linalg.norm(w))
        if hs <= tol_b:
            return ArnoldiFactorization(V[:, : j + 1], H[: j + 1, : j + 1], True)
        H[j + 1, j] = hs
        V[:, j + 1] = w / hs
    return ArnoldiFactorization(V, H, False)


def _apply_rotation(rot, a, b):
    ca, sb, aa = rot
    return ca * a + sb * b, -sb * a + aa * b


def solve(M, b, tol: float = 1e-10, maxit: int | None = None) -> SolveResult:
    """Minimal-residual solve of M conj(x) = b.

    Builds the Arnoldi recurrence one column at a time, keeps the
    least-squares system triangular with plane rotations (the subdiagonal
    entries are real, so each rotation mixes a complex diagonal entry with
    a real one), and stops when the recurrence residual drops below
    ``tol`` times the initial residual or after ``maxit`` steps (default
    n).  The conjugation enters only when assembling x = V conj(z).
    """
    M, b, beta = _checked_system(M, b)
    n = M.shape[0]
    if maxit is None:
        maxit = n
    maxit = min(maxit, n)
    tol_b = BREAKDOWN_RTOL * max(1.0, float(np.linalg.norm(M)))

    V = np.zeros((n, maxit + 1), dtype=complex)
    R = np.zeros((maxit + 1, maxit), dtype=complex)  # rotated triangular factor
    g = np.zeros(maxit + 1, dtype=complex)
    g[0] = beta
    rotations: list[tuple[complex, float, complex]] = []
    residuals = [beta]
    V[:, 0] = b / beta

    k = 0
    breakdown = False
    for j in range(maxit):
        w = M @ np.conj(V[:, j])
        basis = V[:, : j + 1]
        h = basis.conj().T @ w
        w = w - basis @ h
        h2 = basis.conj().T @ w
        w = w - basis @ h2
        col = np.zeros(j + 2, dtype=complex)
        col[: j + 1] = h + h2
        hs = float(np.linalg.norm(w))
        breakdown = hs <= tol_b
        if not breakdown:
            col[j + 1] = hs
            V[:, j + 1] = w / hs
        for i, rot in enumerate(rotations):
            col[i], col[i + 1] = _apply_rotation(rot, col[i], col[i + 1])
        a = col[j]
        s = col[j + 1].real  # subdiagonal is real by construction
        denom = float(np.hypot(abs(a), s))
        if denom == 0.0:
            # dead column (singular leading block): drop it and stop
            break
        rot = (np.conj(a) / denom, s / denom, a / denom)
        rotations.append(rot)
        col[j], col[j + 1] = denom, 0.0
        g[j], g[j + 1] = _apply_rotation(rot, g[j], g[j + 1])
        R[: j + 2, j] = col
        k = j + 1
        residuals.append(abs(g[j + 1]))
        if breakdown or residuals[-1] <= tol * beta:
            break

    z = np.zeros(k, dtype=complex)
    for i in range(k - 1, -1, -1):
        z[i] = (g[i] - R[i, i + 1 : k] @ z[i + 1 : k]) / R[i, i]
    x = V[:, :k] @ np.conj(z)
    converged = residuals[-1] <= tol * beta
    return SolveResult(x, np.asarray(residuals), k, not converged and k >= maxit)


def residual_oracle(M, b, k: int) -> float:
    """Brute-force minimum of ||p(M tau) b|| over degree-k mixed-monomial
    polynomials with p(0) = 1.

    Builds the raw Krylov vectors w_m = (M tau)^m b and solves the
    constrained least-squares problem min ||w_0 + sum alpha_m w_m|| over
    complex coefficients; independent of the Arnoldi solver.
    """
    M, b, beta = _checked_system(M, b)
    if k < 0:
        raise ValidationError("degree must be nonnegative")
    if k == 0:
        return beta
    W = np.empty((len(b), k), dtype=complex)
    w = b
    for m in range(k):
        w = M @ np.conj(w)
        W[:, m] = w
    alpha, *_ = np.linalg.lstsq(W, -b, rcond=None)
    return float(np.linalg.norm(b + W @ alpha))


@dataclass(frozen=True, eq=False)
class StaircaseReport:
    """Per-step residuals of the symmetric-spectrum demonstration.

    ``rows`` holds (k, residual, ratio to the previous step, flag) where
    the flag marks stagnating steps; every odd step must stagnate.
    ``residuals`` is the raw history starting at r_0.
    """

    radii: tuple[float, ...]
    rows: list[tuple[int, float, float, str]]
    residuals: np.ndarray
    odd_steps_stagnated: bool
    final_relative_residual: float


def staircase_demo(radii: Sequence[float] = (1.0, 2.0)) -> StaircaseReport:
    """Run the solver on a diagonal instance with antipodal spectrum.

    Each requested circle radius r contributes the diagonal entries
    +-r * exp(i * theta) (phases stepped by pi/2 per circle) and the
    right-hand side is the constant real unit vector, so the residual can
    drop only at even steps; exact convergence occurs at twice the number
    of circles.
    """
    radii = tuple(float(r) for r in radii)
    if any(r <= 0 for r in radii):
        raise ValidationError("radii must be positive")
    if len(set(np.round(radii, 12))) != len(radii):
        raise ValidationError("radii must be distinct")
    if not radii:
        return StaircaseReport((), [], np.zeros(0), True, 0.0)
    diag: list[complex] = []
    for j, r in enumerate(radii):
        lam = r * np.exp(1j * np.pi * j / 2.0)
        diag.extend([lam, -lam])
    M = np.diag(diag)
    nn = len(diag)
    b = np.ones(nn) / np.sqrt(nn)
    result = solve(M, b, tol=1e-14, maxit=nn)
    rows: list[tuple[int, float, float, str]] = []
    odd_ok = True
    res = result.residuals
    for k in range(1, len(res)):
        ratio = res[k] / res[k - 1] if res[k - 1] > 0 else 1.0
        flag = "stagnation" if ratio >= 1.0 - STAGNATION_RTOL else ""
        if k % 2 == 1 and ratio < 1.0 - STAGNATION_RTOL:
            odd_ok = False
        rows.append((k, float(res[k]), float(ratio), flag))
    return StaircaseReport(radii, rows, odd_ok, float(res[-1] / res[0]))
