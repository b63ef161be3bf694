"""Forward map from measures (or complex symmetric matrices) to complex
Jacobi recurrence coefficients.

Orthogonalizing the monomials lam^<k> in L2 of a biradial measure yields a
three-term recurrence

    beta[j+1] * p[j+1](lam) = lam * conj(p[j](lam)) - alpha[j+1] * p[j](lam)
                              - beta[j] * p[j-1](lam)

with complex diagonal coefficients alpha and positive off-diagonal
coefficients beta.  The same recurrence is produced by a Lanczos-type
iteration for the antilinear map x -> G @ conj(x) of a complex symmetric
matrix G.  This module implements both, plus moment sequences computed
from the recurrence, the moments-to-coefficients map, finite truncations,
and greedy Krylov deflation into invariant blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .birpoly import BiradialPoly
from .errors import Breakdown, IndefiniteMoments, InsufficientMoments, ValidationError, ZeroStart
from .measures import BiradialMeasure
from .moments import MomentMatrix, MomentSequence, as_moment_array, moment_matrix, psd_check

__all__ = [
    "JacobiParams",
    "OrthonormalSystem",
    "MomentSequence",
    "MomentMatrix",
    "KrylovBlock",
    "orthogonalize",
    "eval_orthopoly",
    "jacobi_moments",
    "moment_matrix",
    "psd_check",
    "moments_to_jacobi",
    "antilinear_lanczos",
    "krylov_decompose",
    "favard_truncate",
]

# A recurrence coefficient this small (relative) means the input measure or
# start vector spans fewer dimensions than requested.
BREAKDOWN_RTOL = 1e-12


@dataclass(init=False, frozen=True, eq=False)
class JacobiParams:
    """Complex diagonal alphas and positive off-diagonal betas.

    ``matrix()`` assembles the complex symmetric tridiagonal matrix with
    the alphas on the diagonal and the betas on both off-diagonals.
    """

    alphas: np.ndarray
    betas: np.ndarray

    def __init__(self, alphas: Sequence[complex], betas: Sequence[float]):
        a = np.asarray(alphas, dtype=complex).ravel().copy()
        b = np.asarray(betas, dtype=float).ravel().copy()
        if a.size == 0:
            raise ValidationError("need at least one diagonal coefficient")
        if b.size != a.size - 1:
            raise ValidationError("need exactly one fewer beta than alphas")
        if np.any(b <= 0.0):
            raise ValidationError("off-diagonal coefficients must be positive")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "betas", b)

    @property
    def n(self) -> int:
        return len(self.alphas)

    def matrix(self) -> np.ndarray:
        J = np.diag(self.alphas)
        if self.n > 1:
            J += np.diag(self.betas.astype(complex), 1) + np.diag(self.betas.astype(complex), -1)
        return J


@dataclass(frozen=True, eq=False)
class OrthonormalSystem:
    """Orthonormal polynomials and their value matrix on the support.

    ``values[k, j] = sqrt(rho_k) * polys[j](lam_k)`` is unitary, each
    polynomial has degree j with positive real leading coefficient.
    """

    polys: list[BiradialPoly]
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class KrylovBlock:
    """One invariant block found by greedy deflation."""

    start: np.ndarray
    params: JacobiParams
    basis: np.ndarray


def _require_symmetric(G: np.ndarray) -> np.ndarray:
    G = np.asarray(G, dtype=complex)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValidationError("matrix must be square")
    scale = np.linalg.norm(G)
    if np.linalg.norm(G - G.T) > 1e-12 * max(1.0, scale):
        raise ValidationError("matrix must be complex symmetric")
    return G


def _project_out(w: np.ndarray, basis: np.ndarray | None) -> np.ndarray:
    if basis is not None and basis.shape[1]:
        w = w - basis @ (basis.conj().T @ w)
    return w


def antilinear_lanczos(
    G: np.ndarray,
    x: Sequence[complex],
    k: int | None = None,
    project_out: np.ndarray | None = None,
) -> tuple[JacobiParams, np.ndarray]:
    """Lanczos iteration for the antilinear map w -> G @ conj(w).

    Parameters
    ----------
    G : (n, n) complex symmetric matrix
    x : nonzero start vector
    k : maximum number of steps (default n)
    project_out : optional matrix of orthonormal columns kept out of the
        recurrence (used for deflation)

    Returns
    -------
    params : JacobiParams for the block that was found
    basis : (n, size) matrix with orthonormal columns

    The iteration orthogonalizes with two passes of classical Gram-Schmidt
    per step and stops early when the next off-diagonal coefficient falls
    below ``BREAKDOWN_RTOL`` times the matrix scale, i.e. at an invariant
    subspace.
    """
    G = _require_symmetric(G)
    n = G.shape[0]
    if k is None:
        k = n
    if not (1 <= k <= n):
        raise ValidationError("step count must be between 1 and n")
    q = np.asarray(x, dtype=complex).ravel().copy()
    if q.shape != (n,):
        raise ValidationError("start vector has wrong length")
    q = _project_out(_project_out(q, project_out), project_out)
    nrm = np.linalg.norm(q)
    if nrm <= 1e-300 or np.linalg.norm(x) == 0.0:
        raise ZeroStart("start vector is numerically zero")
    q /= nrm

    tol_b = BREAKDOWN_RTOL * max(1.0, float(np.linalg.norm(G)))
    Q = np.zeros((n, k), dtype=complex)
    Q[:, 0] = q
    alphas: list[complex] = []
    betas: list[float] = []
    for j in range(k):
        w = G @ np.conj(Q[:, j])
        basis = Q[:, : j + 1]
        h = basis.conj().T @ w
        w = w - basis @ h
        w = _project_out(w, project_out)
        h2 = basis.conj().T @ w
        w = w - basis @ h2
        w = _project_out(w, project_out)
        h = h + h2
        alphas.append(complex(h[j]))
        if j + 1 == k:
            break
        b = float(np.linalg.norm(w))
        if b <= tol_b:
            break
        betas.append(b)
        Q[:, j + 1] = w / b
    size = len(alphas)
    return JacobiParams(alphas, betas), Q[:, :size]


def orthogonalize(rho: BiradialMeasure) -> tuple[JacobiParams, OrthonormalSystem]:
    """Orthogonalize the monomials lam^<k> against a biradial measure.

    Works in the value representation: the vectors sqrt(rho_k) * p(lam_k)
    turn multiplication by lam under conjugation into the antilinear map
    of diag(points), so the Lanczos iteration started from sqrt(weights)
    produces the recurrence coefficients and the unitary value matrix in
    one sweep.  The polynomial coefficients are rebuilt from the
    recurrence afterwards.

    Raises Breakdown if the recurrence terminates before n steps, which
    means the input is numerically not biradial with n distinct atoms.
    """
    n = rho.n
    params, Q = antilinear_lanczos(np.diag(rho.points), np.sqrt(rho.weights), n)
    if params.n < n:
        raise Breakdown(f"recurrence broke down at step {params.n} of {n}")
    return params, OrthonormalSystem(_recurrence_polys(params), Q)


def _recurrence_polys(params: JacobiParams) -> list[BiradialPoly]:
    """Coefficient vectors of the orthonormal polynomials, p0 = 1."""
    coeff_rows: list[np.ndarray] = [np.ones(1, dtype=complex)]
    for j in range(params.n - 1):
        pj = coeff_rows[j]
        w = np.zeros(j + 2, dtype=complex)
        w[1:] = np.conj(pj)  # lam * conj(p_j) shifts indices up by one
        w[: j + 1] -= params.alphas[j] * pj
        if j > 0:
            w[:j] -= params.betas[j - 1] * coeff_rows[j - 1]
        coeff_rows.append(w / params.betas[j])
    return [BiradialPoly(c) for c in coeff_rows]


def eval_orthopoly(params: JacobiParams, j: int, lam: complex) -> complex:
    """Value of the j-th orthonormal polynomial by forward recurrence."""
    if not (0 <= j < params.n):
        raise ValidationError(f"polynomial index {j} out of range for n={params.n}")
    p_prev = 0j
    p = 1 + 0j
    for i in range(j):
        p_next = lam * np.conj(p) - params.alphas[i] * p
        if i > 0:
            p_next -= params.betas[i - 1] * p_prev
        p_prev, p = p, p_next / params.betas[i]
    return complex(p)


def jacobi_moments(params: JacobiParams, K: int) -> MomentSequence:
    """Moments of the recurrence: m_k = first entry of (J tau)^k e1.

    Exact for K <= 2n - 1; higher moments differ from those of any
    measure with these coefficients because the matrix is truncated.
    """
    if K < 0:
        raise ValidationError("moment order must be nonnegative")
    J = params.matrix()
    v = np.zeros(params.n, dtype=complex)
    v[0] = 1.0
    m = np.empty(K + 1, dtype=complex)
    m[0] = 1.0
    for k in range(1, K + 1):
        v = J @ np.conj(v)
        m[k] = v[0]
    return MomentSequence(m)


def moments_to_jacobi(m, n: int) -> JacobiParams:
    """Recover n alphas and n-1 betas from the moments m0..m_{2n-1}.

    Runs Gram-Schmidt in coefficient space with the Gram matrix
    G[i, j] = conj^j(m[i+j]) of the monomials and the antilinear shift for
    multiplication by lam under conjugation.  The moment matrix of order n
    must be strictly positive definite.  Conditioning deteriorates roughly
    geometrically in the spread of the support radii; beyond n around 15
    the coefficient-space recurrence is not trustworthy.
    """
    arr = as_moment_array(m)
    if n < 1:
        raise ValidationError("size must be at least 1")
    if len(arr) < 2 * n:
        raise InsufficientMoments(f"size {n} needs {2 * n} moments, got {len(arr)}")

    Mn = moment_matrix(arr, n).entries
    lam_min = float(np.linalg.eigvalsh(Mn)[0])
    scale = max(1.0, abs(float(np.trace(Mn).real)))
    if lam_min <= 1e-12 * scale:
        raise IndefiniteMoments(f"moment matrix of order {n} is not positive definite")

    # Gram matrix of the monomials lam^<0>..lam^<n>; the (n, n) corner is
    # never referenced by the recurrence below.
    gram = np.zeros((n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        hi = min(n, 2 * n - 1 - j)
        col = arr[j : j + hi + 1]
        gram[: hi + 1, j] = np.conj(col) if j % 2 else col

    def ip(a: np.ndarray, b: np.ndarray) -> complex:
        return complex(np.conj(b) @ (gram.T @ a))

    def shift_conj(a: np.ndarray) -> np.ndarray:
        out = np.zeros(n + 1, dtype=complex)
        out[1:] = np.conj(a[:-1])
        return out

    polys = np.zeros((n + 1, n + 1), dtype=complex)
    polys[0, 0] = 1.0 / np.sqrt(gram[0, 0].real)  # = 1/sqrt(m0)
    alphas: list[complex] = []
    betas: list[float] = []
    for j in range(n):
        w = shift_conj(polys[j])
        alphas.append(ip(w, polys[j]))
        if j == n - 1:
            break
        for _ in range(2):  # MGS with one reorthogonalization pass
            for i in range(j + 1):
                w = w - ip(w, polys[i]) * polys[i]
        nrm2 = ip(w, w).real
        if nrm2 <= 0.0:
            raise IndefiniteMoments(f"lost positivity at step {j + 1}")
        b = float(np.sqrt(nrm2))
        betas.append(b)
        polys[j + 1] = w / b
    return JacobiParams(alphas, betas)


def krylov_decompose(G: np.ndarray) -> list[KrylovBlock]:
    """Split C^n into invariant blocks of the antilinear map of G.

    Greedy deflation: run the Lanczos iteration from e1, project the block
    out, restart from the first standard basis vector with a nonnegligible
    component outside the blocks found so far.  Block dimensions sum to n
    and the bases are mutually orthonormal.
    """
    G = _require_symmetric(G)
    n = G.shape[0]
    blocks: list[KrylovBlock] = []
    accumulated: np.ndarray | None = None
    used = 0
    while used < n:
        start = None
        for idx in range(n):
            e = np.zeros(n, dtype=complex)
            e[idx] = 1.0
            y = _project_out(_project_out(e, accumulated), accumulated)
            if np.linalg.norm(y) > 1e-8:
                start = y
                break
        if start is None:
            raise Breakdown("no restart direction found although blocks do not span")
        params, basis = antilinear_lanczos(G, start, k=n - used, project_out=accumulated)
        blocks.append(KrylovBlock(basis[:, 0].copy(), params, basis))
        accumulated = basis if accumulated is None else np.hstack([accumulated, basis])
        used += params.n
    return blocks


def favard_truncate(alphas: Sequence[complex], betas: Sequence[float], n: int) -> BiradialMeasure:
    """Measure whose first n alphas and n-1 betas reproduce the input.

    Takes the leading n x n truncation of the recurrence and inverts it
    through the con-eigendecomposition; the result is one representative
    of the equivalence class of measures with these coefficients.
    """
    from .coneig import jacobi_to_measure  # local import, avoids a cycle

    if n < 1:
        raise ValidationError("size must be at least 1")
    a = np.asarray(alphas, dtype=complex).ravel()
    b = np.asarray(betas, dtype=float).ravel()
    if len(a) < n or len(b) < n - 1:
        raise ValidationError(f"need at least {n} alphas and {n - 1} betas")
    return jacobi_to_measure(JacobiParams(a[:n], b[: n - 1]))
