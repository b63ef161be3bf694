"""Polynomials over the mixed monomials lam^<k> and their circle structure.

The monomial of index k is ``|lam|^k`` for even k and ``lam * |lam|^(k-1)``
for odd k.  Finite linear combinations are exactly the functions
``u(|lam|^2) + v(|lam|^2) * lam`` with polynomial ``u`` and ``v``, so a
member is determined on every origin-centred circle of radius r by the two
circle values ``(u(r^2), v(r^2))``.  This module implements coefficient
arithmetic, evaluation, the degree-raising antilinear shift
``p -> lam * conj(p)``, the circle-wise zero structure, and two-point
interpolation on a circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import SingularSystem

__all__ = [
    "BiradialPoly",
    "UVPair",
    "ZeroKind",
    "ZeroStructure",
    "monomial_eval",
    "poly_eval",
    "conj_shift",
    "product",
    "uv_on_circle",
    "zeros_on_circle",
    "circle_interpolate",
]

# Relative tolerance deciding whether a candidate zero sits on the circle.
CIRCLE_RTOL = 1e-9


@dataclass(init=False, frozen=True)
class BiradialPoly:
    """Dense coefficient vector over the monomials lam^<0>, lam^<1>, ...

    Trailing zero coefficients are trimmed on construction, so the zero
    polynomial is the empty tuple and ``degree`` is O(1).
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex] = ()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, lam):
        return poly_eval(self, lam)


@dataclass(frozen=True)
class UVPair:
    """Circle values (u(r^2), v(r^2)) of a polynomial on one circle."""

    u_val: complex
    v_val: complex

    def value_at(self, lam: complex) -> complex:
        """Evaluate u + v*lam, valid for |lam| equal to the queried radius."""
        return self.u_val + self.v_val * lam


class ZeroKind(Enum):
    NO_ZERO = "no-zero"
    SINGLE_POINT = "single-point"
    FULL_CIRCLE = "full-circle"


@dataclass(frozen=True)
class ZeroStructure:
    """Zero set of a polynomial restricted to one origin-centred circle.

    On a fixed circle the restriction is ``u + v*lam``: it either never
    vanishes, vanishes at the single point ``-u/v``, or vanishes
    identically (u = v = 0).
    """

    kind: ZeroKind
    point: complex | None = None


def _maybe_scalar(x, out):
    if np.ndim(x) == 0:
        return complex(out)
    return out


def monomial_eval(k: int, lam):
    """Evaluate lam^<k>: |lam|^k for even k, lam*|lam|^(k-1) for odd k."""
    if k < 0:
        raise ValueError("monomial index must be nonnegative")
    a = np.abs(lam)
    if k % 2 == 0:
        return _maybe_scalar(lam, a**k)
    return _maybe_scalar(lam, np.asarray(lam) * a ** (k - 1))


def _split_uv(p: BiradialPoly) -> tuple[np.ndarray, np.ndarray]:
    """Even/odd coefficient subsequences as polynomials in t = |lam|^2."""
    c = np.asarray(p.coeffs, dtype=complex)
    return c[0::2], c[1::2]


def _eval_t(c: np.ndarray, t):
    if len(c) == 0:
        return np.zeros_like(np.asarray(t, dtype=complex))
    return np.polynomial.polynomial.polyval(t, c)


def poly_eval(p: BiradialPoly, lam):
    """Evaluate p at lam (scalar or array), via the circle decomposition."""
    u, v = _split_uv(p)
    t = np.abs(lam) ** 2
    out = _eval_t(u, t) + _eval_t(v, t) * np.asarray(lam)
    return _maybe_scalar(lam, out)


def conj_shift(p: BiradialPoly) -> BiradialPoly:
    """Multiply by lam under conjugation: q(lam) = lam * conj(p(lam)).

    In coefficients this shifts every index up by one and conjugates, since
    lam * conj(lam^<k>) = lam^<k+1> for every k.
    """
    if p.is_zero():
        return p
    return BiradialPoly((0j,) + tuple(np.conj(p.coeffs)))


def _conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=complex)
    return np.convolve(a, b)


def _padd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


def product(f: BiradialPoly, g: BiradialPoly) -> BiradialPoly:
    """Operator-composition product of two polynomials.

    With circle parts (u1, v1) and (u2, v2) the result has
    u = u1*u2 + t*v1*conj(v2) and v = u1*v2 + conj(u2)*v1 as polynomials in
    t = |lam|^2; this matches composing the two operator polynomials on any
    eigenvector of an antilinear operator.  Cost is O(d1*d2) via
    convolution of the even/odd coefficient subsequences.
    """
    u1, v1 = _split_uv(f)
    u2, v2 = _split_uv(g)
    uu = _conv(u1, u2)
    tvv = _conv(v1, np.conj(v2))
    if len(tvv):
        tvv = np.concatenate([[0j], tvv])  # extra factor t
    u = _padd(uu, tvv)
    v = _padd(_conv(u1, v2), _conv(np.conj(u2), v1))
    d = max(len(u), len(v))
    out = np.zeros(2 * d, dtype=complex)
    out[0 : 2 * len(u) : 2] = u
    out[1 : 2 * len(v) + 1 : 2] = v
    return BiradialPoly(out)


def uv_on_circle(p: BiradialPoly, r: float) -> UVPair:
    """Circle values (u(r^2), v(r^2)) of p on the circle of radius r >= 0."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    u, v = _split_uv(p)
    t = r * r
    return UVPair(complex(_eval_t(u, t)), complex(_eval_t(v, t)))


def zeros_on_circle(p: BiradialPoly, r: float, zero_tol: float = 1e-12) -> ZeroStructure:
    """Classify the zero set of p on the circle of radius r.

    ``zero_tol`` is relative to the coefficient magnitude scale at radius r.
    The zero polynomial vanishes on every circle.
    """
    uv = uv_on_circle(p, r)
    scale = sum(abs(c) * max(1.0, r) ** k for k, c in enumerate(p.coeffs))
    if scale == 0.0:
        return ZeroStructure(ZeroKind.FULL_CIRCLE)
    u, v = uv.u_val, uv.v_val
    if abs(v) <= zero_tol * scale:
        if abs(u) <= zero_tol * scale:
            return ZeroStructure(ZeroKind.FULL_CIRCLE)
        return ZeroStructure(ZeroKind.NO_ZERO)
    lam0 = -u / v
    if abs(abs(lam0) - r) <= CIRCLE_RTOL * max(1.0, r):
        return ZeroStructure(ZeroKind.SINGLE_POINT, lam0)
    return ZeroStructure(ZeroKind.NO_ZERO)


def circle_interpolate(r: float, theta1: float, theta2: float, a: complex, b: complex) -> UVPair:
    """Recover (u, v) on the circle of radius r > 0 from two point values.

    Solves u + v*r*exp(i*theta1) = a and u + v*r*exp(i*theta2) = b; the two
    angles must be distinct modulo 2*pi.
    """
    if r <= 0:
        raise SingularSystem("radius must be positive")
    e1 = np.exp(1j * theta1)
    e2 = np.exp(1j * theta2)
    if abs(e1 - e2) <= 1e-12:
        raise SingularSystem("sample angles coincide modulo 2*pi")
    v = (a - b) / (r * (e1 - e2))
    u = a - v * r * e1
    return UVPair(complex(u), complex(v))
