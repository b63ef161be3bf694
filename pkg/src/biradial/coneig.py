"""Con-eigendecomposition of complex symmetric matrices and the inverse
map from Jacobi recurrence coefficients to a biradial measure.

A con-eigenpair of G solves G @ conj(v) = lam * v; rephasing transforms it
covariantly, (v, lam) -> (e^{i phi} v, e^{-2 i phi} lam), so each pair can
be normalized to a unit vector with positive real anchor entry.  For
complex symmetric G the antilinear map w -> G @ conj(w) is represented by
the real symmetric matrix

    R = [[Re G, Im G], [Im G, -Re G]]

acting on stacked real/imaginary parts.  Its spectrum is {+-sigma_k}, and
the eigenvectors for the nonnegative half are exactly rephased
con-eigenvectors.  Eigenvectors inside a degenerate or nearly degenerate
sigma cluster mix only with real coefficients, which leaves both the
con-eigen residuals and the mutual orthogonality at rounding level, so a
single Hermitian eigensolve covers simple, double, and clustered moduli
uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NumericalBreakdown, ZeroFirstEntry
from .jacobi import JacobiParams, _require_symmetric
from .measures import BiradialMeasure, PlanarAtomicMeasure, canonicalize

__all__ = ["ConEigenPair", "hermitian_eig", "con_eigenpairs", "jacobi_to_measure"]

# Below this, a first entry counts as zero and the input as reducible.
FIRST_ENTRY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ConEigenPair:
    """Unit con-eigenvector with positive real anchor entry.

    ``anchor`` is the entry fixed to be real positive by the rephasing; it
    is 0 (the first entry) whenever that entry is nonnegligible.
    """

    lam: complex
    v: np.ndarray
    anchor: int = 0


def hermitian_eig(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Thin validation wrapper: raises NotHermitian when the input is not
    Hermitian to relative tolerance 1e-12.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotHermitian("matrix must be square")
    if np.linalg.norm(H - H.conj().T) > 1e-12 * max(1.0, np.linalg.norm(H)):
        raise NotHermitian("matrix is not Hermitian")
    w, V = np.linalg.eigh(H)
    return w, V


def _realified(G: np.ndarray) -> np.ndarray:
    re, im = G.real, G.imag
    return np.block([[re, im], [im, -re]])


def con_eigenpairs(G: np.ndarray, require_first_entry: bool = False) -> list[ConEigenPair]:
    """All con-eigenpairs of a complex symmetric matrix.

    Pairs are sorted by (modulus, argument).  Each vector is rephased so
    its anchor entry is real positive; the anchor is the first entry when
    that is larger than FIRST_ENTRY_TOL, otherwise the largest entry.
    With ``require_first_entry=True`` a negligible first entry raises
    ZeroFirstEntry instead: an unreduced tridiagonal input guarantees
    nonzero first entries, so hitting this means the input is reducible
    and should be split with krylov_decompose first.
    """
    G = _require_symmetric(G)
    n = G.shape[0]
    scale = float(np.linalg.norm(G))
    z_tol = 1e-12 * scale
    s, Xi = hermitian_eig(_realified(G))

    vectors: list[tuple[float, np.ndarray]] = []
    kernel_raw: list[np.ndarray] = []
    for i in range(2 * n):
        w = Xi[:n, i] + 1j * Xi[n:, i]
        if s[i] > z_tol:
            vectors.append((float(s[i]), w))
        elif abs(s[i]) <= z_tol:
            kernel_raw.append(w)

    kernel_dim = n - len(vectors)
    kept: list[np.ndarray] = []
    for w in kernel_raw:
        if len(kept) == kernel_dim:
            break
        for u in kept:
            w = w - (np.conj(u) @ w) * u
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            kept.append(w / nrm)
    if len(kept) != kernel_dim:
        raise NumericalBreakdown("could not separate the kernel block of the con-eigenproblem")
    vectors.extend((0.0, w) for w in kept)

    pairs: list[ConEigenPair] = []
    for sigma, w in vectors:
        anchor = 0
        if abs(w[0]) <= FIRST_ENTRY_TOL:
            if require_first_entry:
                raise ZeroFirstEntry(
                    "con-eigenvector has numerically zero first entry; "
                    "input is reducible, split it with krylov_decompose"
                )
            anchor = int(np.argmax(np.abs(w)))
        phi = -np.angle(w[anchor])
        v = w * np.exp(1j * phi)
        lam = sigma * np.exp(-2j * phi)
        pairs.append(ConEigenPair(complex(lam), v, anchor))

    pairs.sort(key=lambda p: (abs(p.lam), np.mod(np.angle(p.lam), 2.0 * np.pi)))
    return pairs


def jacobi_to_measure(params: JacobiParams) -> BiradialMeasure:
    """Biradial measure whose recurrence coefficients are ``params``.

    The support points are the con-eigenvalues of the assembled
    tridiagonal matrix and the weights are the squared first entries of
    the con-eigenvectors.  The result is one deterministic representative
    of the equivalence class of measures with these coefficients.
    """
    pairs = con_eigenpairs(params.matrix(), require_first_entry=True)
    points = [p.lam for p in pairs]
    weights = [float(p.v[0].real) ** 2 for p in pairs]
    return canonicalize(PlanarAtomicMeasure(points, weights))
