"""Real-linear operators, functions of antilinear operators, and numerical
spectral-mapping checks.

An operator that is additive and commutes with real scalars splits
uniquely into a complex-linear part C and an antilinear part
x -> A @ conj(x).  Functions of the antilinear map of a complex symmetric
G are built from a pair of one-variable (Laurent) polynomials (u, v) as
u(G @ conj(G)) + v(G @ conj(G)) @ G acting antilinearly, matching
u(|lam|^2) + v(|lam|^2) * lam on con-eigenvectors.  Spectra and norms are
evaluated through the real 2n x 2n representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import SingularMatrix, ValidationError

__all__ = [
    "RealLinearOp",
    "LaurentCoeffs",
    "BiradialFunction",
    "SpectrumCircles",
    "SpecMapReport",
    "realify",
    "separate",
    "unrealify",
    "op_norm",
    "antilinear_spectrum",
    "laurent_to_biradial",
    "apply_calculus",
    "apply_laurent",
    "in_spectrum",
    "specmap_check",
    "norm_formula_check",
    "gelfand_estimate",
    "hankel_fixture",
]


@dataclass(init=False, frozen=True, eq=False)
class RealLinearOp:
    """Pair (C, A) acting as x -> C @ x + A @ conj(x)."""

    C: np.ndarray
    A: np.ndarray

    def __init__(self, C, A):
        Cm = np.asarray(C, dtype=complex)
        Am = np.asarray(A, dtype=complex)
        if Cm.shape != Am.shape or Cm.ndim != 2 or Cm.shape[0] != Cm.shape[1]:
            raise ValidationError("linear and antilinear parts must be square and equally sized")
        object.__setattr__(self, "C", Cm)
        object.__setattr__(self, "A", Am)

    @property
    def n(self) -> int:
        return self.C.shape[0]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return self.C @ x + self.A @ np.conj(x)

    @classmethod
    def antilinear(cls, A) -> "RealLinearOp":
        A = np.asarray(A, dtype=complex)
        return cls(np.zeros_like(A), A)

    @classmethod
    def linear(cls, C) -> "RealLinearOp":
        C = np.asarray(C, dtype=complex)
        return cls(C, np.zeros_like(C))


def realify(op: RealLinearOp) -> np.ndarray:
    """Real 2n x 2n matrix acting on stacked (Re x, Im x)."""
    ReC, ImC = op.C.real, op.C.imag
    ReA, ImA = op.A.real, op.A.imag
    return np.block([[ReC + ReA, -ImC + ImA], [ImC + ImA, ReC - ReA]])


def separate(apply_fn: Callable[[np.ndarray], np.ndarray], n: int) -> RealLinearOp:
    """Split an additive real-homogeneous action into its (C, A) parts.

    Uses C x = (B x - i B(i x)) / 2 and A conj(x) = (B x + i B(i x)) / 2
    column by column.
    """
    C = np.empty((n, n), dtype=complex)
    A = np.empty((n, n), dtype=complex)
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        be = np.asarray(apply_fn(e), dtype=complex)
        bie = np.asarray(apply_fn(1j * e), dtype=complex)
        C[:, j] = 0.5 * (be - 1j * bie)
        A[:, j] = 0.5 * (be + 1j * bie)
    return RealLinearOp(C, A)


def unrealify(R: np.ndarray) -> RealLinearOp:
    """Inverse of :func:`realify` for any real 2n x 2n matrix."""
    R = np.asarray(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] % 2:
        raise ValidationError("matrix must be square with even dimension")
    n = R.shape[0] // 2

    def apply_fn(x: np.ndarray) -> np.ndarray:
        y = R @ np.concatenate([x.real, x.imag])
        return y[:n] + 1j * y[n:]

    return separate(apply_fn, n)


def op_norm(op: RealLinearOp) -> float:
    """Operator norm sup ||op(x)|| / ||x||: top singular value of realify."""
    return float(np.linalg.norm(realify(op), 2))


@dataclass(frozen=True)
class SpectrumCircles:
    """Spectrum of an antilinear map: a union of origin-centred circles."""

    radii: tuple[float, ...]

    def __bool__(self) -> bool:
        return bool(self.radii)

    @property
    def max_radius(self) -> float:
        return self.radii[-1] if self.radii else 0.0


def antilinear_spectrum(A: np.ndarray) -> SpectrumCircles:
    """Circle radii of the spectrum of x -> A @ conj(x).

    lam belongs to the spectrum iff |lam|^2 is an eigenvalue of
    A @ conj(A); eigenvalues with a negative or nonreal value contribute
    nothing, so the spectrum may be empty.
    """
    A = np.asarray(A, dtype=complex)
    B = A @ np.conj(A)
    mu = np.linalg.eigvals(B)
    s2 = float(np.linalg.norm(A, 2)) ** 2
    keep = (np.abs(mu.imag) <= 1e-9 * max(1.0, s2)) & (mu.real >= -1e-9 * max(1.0, s2))
    radii = np.sqrt(np.clip(mu.real[keep], 0.0, None))
    radii.sort()
    merged: list[float] = []
    for r in radii:
        if merged and r - merged[-1] <= 1e-9 * max(1.0, r):
            continue
        merged.append(float(r))
    return SpectrumCircles(tuple(merged))


@dataclass(init=False, frozen=True)
class LaurentCoeffs:
    """Finitely supported Laurent coefficients alpha_k, k_min <= k <= k_max."""

    coeffs: tuple[complex, ...]
    k_min: int

    def __init__(self, coeffs: Iterable[complex] = (), k_min: int = 0):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        while cs and cs[0] == 0:
            cs.pop(0)
            k_min += 1
        if not cs:
            k_min = 0
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "k_min", int(k_min))

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.coeffs) - 1

    def items(self) -> list[tuple[int, complex]]:
        return [(self.k_min + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z: complex) -> complex:
        if self.is_zero():
            return 0j
        if self.k_min < 0 and z == 0:
            raise ZeroDivisionError("negative powers at zero")
        return complex(sum(c * z**k for k, c in self.items()))

    @classmethod
    def from_dict(cls, d: dict[int, complex]) -> "LaurentCoeffs":
        if not d:
            return cls()
        k_min = min(d)
        k_max = max(d)
        return cls([d.get(k, 0j) for k in range(k_min, k_max + 1)], k_min)


@dataclass(frozen=True)
class BiradialFunction:
    """Function lam -> u(|lam|^2) + v(|lam|^2) * lam with Laurent u, v."""

    u: LaurentCoeffs = field(default_factory=LaurentCoeffs)
    v: LaurentCoeffs = field(default_factory=LaurentCoeffs)

    def __call__(self, lam: complex) -> complex:
        t = abs(lam) ** 2
        return self.u(t) + self.v(t) * lam

    def circle_max(self, r: float) -> float:
        """max of |value| on the circle of radius r: |u(r^2)| + r*|v(r^2)|."""
        t = r * r
        return abs(self.u(t)) + r * abs(self.v(t))

    @classmethod
    def from_poly_coeffs(cls, u: Sequence[complex] = (), v: Sequence[complex] = ()) -> "BiradialFunction":
        return cls(LaurentCoeffs(u), LaurentCoeffs(v))


def laurent_to_biradial(f: LaurentCoeffs) -> BiradialFunction:
    """Regroup Laurent coefficients into the circle form.

    Index 2k goes to u as the power t^k and index 2k+1 goes to v as t^k,
    with t = |lam|^2; negative indices land on negative powers of t.
    """
    u: dict[int, complex] = {}
    v: dict[int, complex] = {}
    for k, c in f.items():
        if k % 2 == 0:
            u[k // 2] = u.get(k // 2, 0j) + c
        else:
            t = (k - 1) // 2
            v[t] = v.get(t, 0j) + c
    return BiradialFunction(LaurentCoeffs.from_dict(u), LaurentCoeffs.from_dict(v))


def _laurent_of_matrix(c: LaurentCoeffs, B: np.ndarray) -> np.ndarray:
    """Evaluate a Laurent polynomial at a matrix argument by Horner."""
    n = B.shape[0]
    if c.is_zero():
        return np.zeros((n, n), dtype=complex)
    out = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(out, c.coeffs[-1])
    for k in range(len(c.coeffs) - 2, -1, -1):
        out = out @ B
        out[np.diag_indices(n)] += c.coeffs[k]
    if c.k_min > 0:
        for _ in range(c.k_min):
            out = out @ B
    elif c.k_min < 0:
        try:
            Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrix("negative powers of a singular matrix") from exc
        for _ in range(-c.k_min):
            out = out @ Binv
    return out


def apply_calculus(G: np.ndarray, f: BiradialFunction) -> RealLinearOp:
    """Assemble u(A^2) + v(A^2) A for the antilinear map A of symmetric G.

    A^2 = G @ conj(G) is complex linear, so the linear part is
    u(G conj(G)) and the antilinear part is v(G conj(G)) @ G.  Negative
    powers require G conj(G) to be invertible.
    """
    from .jacobi import _require_symmetric

    G = _require_symmetric(G)
    B = G @ np.conj(G)
    return RealLinearOp(_laurent_of_matrix(f.u, B), _laurent_of_matrix(f.v, B) @ G)


def apply_laurent(A: np.ndarray, f: LaurentCoeffs) -> RealLinearOp:
    """Sum alpha_k (A tau)^k for a general (not necessarily symmetric) A.

    Even powers (A tau)^{2t} = (A conj(A))^t feed the linear part, odd
    powers (A tau)^{2t+1} = (A conj(A))^t A the antilinear part; negative
    powers require A invertible.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError("matrix must be square")
    n = A.shape[0]
    C = np.zeros((n, n), dtype=complex)
    Ap = np.zeros((n, n), dtype=complex)
    if f.is_zero():
        return RealLinearOp(C, Ap)
    P = A @ np.conj(A)
    t_lo = min(k // 2 if k % 2 == 0 else (k - 1) // 2 for k, _ in f.items())
    Pinv = None
    if t_lo < 0 or f.k_min < 0:
        try:
            Pinv = np.linalg.inv(P)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrix("negative powers of a noninvertible antilinear map") from exc
    powers = {0: np.eye(n, dtype=complex)}

    def P_pow(t: int) -> np.ndarray:
        if t not in powers:
            if t > 0:
                powers[t] = P_pow(t - 1) @ P
            else:
                powers[t] = P_pow(t + 1) @ Pinv
        return powers[t]

    for k, c in f.items():
        if k % 2 == 0:
            C += c * P_pow(k // 2)
        else:
            Ap += c * (P_pow((k - 1) // 2) @ A)
    return RealLinearOp(C, Ap)


def in_spectrum(op: RealLinearOp, lam: complex, tol: float = 1e-6) -> bool:
    """Bounded-invertibility proxy: smallest singular value of the
    realified pencil lam*I - op below tol times the operator scale."""
    pencil = RealLinearOp(lam * np.eye(op.n, dtype=complex) - op.C, -op.A)
    smin = float(np.linalg.svd(realify(pencil), compute_uv=False)[-1])
    return smin <= tol * op_norm(op)


@dataclass(frozen=True)
class SpecMapReport:
    """Outcome of the sampled spectral-mapping verification."""

    radii: tuple[float, ...]
    samples: int
    tol: float
    violations: int
    max_violation: float
    converse_tested: int
    converse_failures: int

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.converse_failures == 0


def _image_distance(f: BiradialFunction, radii: Sequence[float], z: complex) -> float:
    """Distance from z to the image of the spectrum circles under f.

    The image of the circle of radius r is the circle with centre u(r^2)
    and radius r*|v(r^2)|, so the distance has a closed form.
    """
    return min(abs(abs(z - f.u(r * r)) - r * abs(f.v(r * r))) for r in radii)


def specmap_check(
    G: np.ndarray,
    f: BiradialFunction,
    samples: int = 32,
    tol: float = 1e-6,
    converse_min_distance: float = 0.1,
) -> SpecMapReport:
    """Verify the mapped spectrum inclusion on sampled circle points.

    For every spectrum radius r of the antilinear map of G and ``samples``
    equispaced angles, the image value must be flagged inside the spectrum
    of the assembled operator.  A converse pass samples a deterministic
    grid of candidate points and requires every point farther than
    ``converse_min_distance`` from the mapped spectrum to be rejected;
    for symmetric G the mapping is exact, so both directions must hold.
    """
    op = apply_calculus(G, f)
    spectrum = antilinear_spectrum(G)
    radii = spectrum.radii
    scale = op_norm(op)
    violations = 0
    max_violation = 0.0
    thetas = 2.0 * np.pi * np.arange(samples) / max(samples, 1)
    for r in radii:
        for theta in thetas:
            z = f(r * np.exp(1j * theta))
            pencil = RealLinearOp(z * np.eye(op.n, dtype=complex) - op.C, -op.A)
            smin = float(np.linalg.svd(realify(pencil), compute_uv=False)[-1])
            ratio = smin / max(scale, 1e-300)
            if ratio > tol:
                violations += 1
                max_violation = max(max_violation, ratio)

    converse_tested = 0
    converse_failures = 0
    if radii:
        image_peak = max(f.circle_max(r) for r in radii)
        grid_r = np.linspace(0.0, 1.5 * image_peak + 1.0, 9)
        grid_theta = 2.0 * np.pi * np.arange(8) / 8.0
        for gr in grid_r:
            for gt in grid_theta:
                z = gr * np.exp(1j * gt)
                if _image_distance(f, radii, complex(z)) < converse_min_distance:
                    continue
                converse_tested += 1
                if in_spectrum(op, complex(z), tol):
                    converse_failures += 1
    return SpecMapReport(radii, samples, tol, violations, max_violation, converse_tested, converse_failures)


def norm_formula_check(G: np.ndarray, f: BiradialFunction) -> tuple[float, float]:
    """Operator norm of f applied to the antilinear map of G versus the
    closed-form circle maximum over the spectrum radii."""
    lhs = op_norm(apply_calculus(G, f))
    radii = antilinear_spectrum(G).radii
    rhs = max((f.circle_max(r) for r in radii), default=0.0)
    return lhs, rhs


def gelfand_estimate(A: np.ndarray, jmax: int) -> np.ndarray:
    """Root norms ||(A tau)^j||^(1/j) for j = 1..jmax.

    For symmetric A the even entries equal the largest spectrum radius
    exactly because (A conj(A))^k is Hermitian positive semidefinite; for
    general A with nonnegative real spectrum of A conj(A) the sequence
    converges to the largest radius.
    """
    A = np.asarray(A, dtype=complex)
    if jmax < 1:
        raise ValidationError("jmax must be at least 1")
    P = A @ np.conj(A)
    out = np.empty(jmax)
    X = np.eye(A.shape[0], dtype=complex)  # (A tau)^(2k) accumulator
    for j in range(1, jmax + 1):
        if j % 2 == 1:
            op = RealLinearOp.antilinear(X @ A)
        else:
            X = X @ P
            op = RealLinearOp.linear(X)
        out[j - 1] = op_norm(op) ** (1.0 / j)
    return out


def hankel_fixture(symbol: Sequence[complex], n: int) -> np.ndarray:
    """n x n matrix with constant anti-diagonals H[i, j] = symbol[i + j].

    Needs 2n - 1 symbol values; the result is complex symmetric by
    construction.
    """
    c = np.asarray(symbol, dtype=complex).ravel()
    if n < 1:
        raise ValidationError("size must be at least 1")
    if len(c) < 2 * n - 1:
        raise ValidationError(f"size {n} needs {2 * n - 1} symbol values, got {len(c)}")
    idx = np.arange(n)
    return c[idx[:, None] + idx[None, :]]
