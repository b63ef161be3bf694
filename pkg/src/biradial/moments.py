"""Moment sequences and the Hankel-like moment matrix with its PSD test.

The k-th moment of a measure is the integral of the monomial lam^<k>.  A
realizable sequence has m0 = 1 and real nonnegative even moments; the
moment matrix interleaves conjugated columns, M[i, j] = conj^j(m[i+j])
(0-based), and realizability is equivalent to all leading blocks being
positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InsufficientMoments, ValidationError

__all__ = ["MomentSequence", "MomentMatrix", "moment_matrix", "psd_check"]


@dataclass(init=False, frozen=True, eq=False)
class MomentSequence:
    """Complex moments m0..mK with m0 = 1 and real even moments.

    Nonnegativity of the even moments is deliberately not enforced here;
    it is the job of :func:`psd_check` to detect unrealizable sequences.
    """

    m: np.ndarray

    def __init__(self, m: Sequence[complex]):
        arr = np.asarray(m, dtype=complex).ravel().copy()
        if arr.size == 0:
            raise ValidationError("moment sequence must contain m0")
        if abs(arr[0] - 1.0) > 1e-8:
            raise ValidationError(f"m0 must equal 1, got {arr[0]}")
        even = arr[0::2]
        bad = np.abs(even.imag) > 1e-8 * (1.0 + np.abs(even))
        if np.any(bad):
            raise ValidationError("even moments must be real")
        arr.flags.writeable = False
        object.__setattr__(self, "m", arr)

    @property
    def order(self) -> int:
        return len(self.m) - 1

    def __len__(self) -> int:
        return len(self.m)

    def __getitem__(self, k):
        return self.m[k]


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    """Leading k x k block of the conjugate-interleaved moment matrix."""

    k: int
    entries: np.ndarray


def as_moment_array(m) -> np.ndarray:
    """Accept a MomentSequence or a plain sequence of complex moments."""
    if isinstance(m, MomentSequence):
        return m.m
    return np.asarray(m, dtype=complex).ravel()


def moment_matrix(m, k: int) -> MomentMatrix:
    """Assemble the k x k moment matrix M[i, j] = conj^j(m[i+j]) (0-based).

    Columns with odd 0-based index carry conjugated moments, so the first
    row reads (m0, conj(m1), m2, conj(m3), ...).  Requires 2k-1 moments.
    """
    arr = as_moment_array(m)
    if k < 1:
        raise ValidationError("matrix order must be at least 1")
    if len(arr) < 2 * k - 1:
        raise InsufficientMoments(f"order {k} needs {2 * k - 1} moments, got {len(arr)}")
    M = np.empty((k, k), dtype=complex)
    for j in range(k):
        col = arr[j : j + k]
        M[:, j] = np.conj(col) if j % 2 else col
    return MomentMatrix(k, M)


def psd_check(m, k: int) -> tuple[bool, float]:
    """Test positive semidefiniteness of the order-k moment matrix.

    Returns (is_psd, min_eigenvalue); the threshold is -1e-10 relative to
    the trace scale, so honest floating-point moment data passes.
    """
    M = moment_matrix(m, k).entries
    lam_min = float(np.linalg.eigvalsh(M)[0])
    scale = max(1.0, abs(float(np.trace(M).real)))
    return lam_min >= -1e-10 * scale, lam_min
