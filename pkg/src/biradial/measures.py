"""Finite atomic measures on the plane with at most two atoms per circle.

A biradial measure is an atomic probability measure whose support meets
every origin-centred circle in at most two points, stored in canonical
order: two-point circles first with strictly increasing radii, then
single-point circles with strictly increasing radii.  The module provides
validation/canonical ordering, the L2 inner product against such a
measure, circle-wise mass summaries, moment-preserving symmetrization of
arbitrary finite planar measures, and sampling of the equivalence class of
measures sharing the same recurrence coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .birpoly import BiradialPoly, poly_eval
from .errors import (
    DuplicatePoint,
    InvalidAngle,
    MassNotNormalizable,
    NonPositiveWeight,
    ThreeOnCircle,
    ValidationError,
)
from .moments import MomentSequence

__all__ = [
    "PlanarAtomicMeasure",
    "BiradialMeasure",
    "CircleMass",
    "canonicalize",
    "inner_product",
    "circle_masses",
    "symmetrize",
    "equivalent_sample",
    "are_equivalent",
    "measure_moments",
]

# Two radii belong to the same circle when closer than this (relative).
RADIAL_TOL = 1e-9
# Total mass may deviate from 1 by this much before renormalization fails.
MASS_TOL = 1e-6


def _radial_tol(*radii: float) -> float:
    return RADIAL_TOL * max(1.0, *radii)


@dataclass(init=False, frozen=True, eq=False)
class PlanarAtomicMeasure:
    """Finite atomic measure: support points and strictly positive weights."""

    points: np.ndarray
    weights: np.ndarray

    def __init__(self, points: Sequence[complex], weights: Sequence[float]):
        pts = np.asarray(points, dtype=complex).ravel().copy()
        wts = np.asarray(weights, dtype=float).ravel().copy()
        if pts.size != wts.size:
            raise ValidationError("points and weights must have equal length")
        if pts.size == 0:
            raise ValidationError("measure needs at least one atom")
        pts.flags.writeable = False
        wts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @property
    def n(self) -> int:
        return len(self.points)

    def atoms(self) -> list[tuple[complex, float]]:
        return [(complex(p), float(w)) for p, w in zip(self.points, self.weights)]


@dataclass(init=False, frozen=True, eq=False)
class BiradialMeasure:
    """Canonically ordered biradial probability measure.

    The first ``2 * pair_count`` atoms form the two-point circles (pair
    radii strictly increasing, atoms within a pair ordered by argument);
    the remaining atoms are single-point circles with strictly increasing
    radii.  Weights sum to one.
    """

    points: np.ndarray
    weights: np.ndarray
    pair_count: int

    def __init__(self, points, weights, pair_count: int):
        pts = np.asarray(points, dtype=complex).ravel().copy()
        wts = np.asarray(weights, dtype=float).ravel().copy()
        if not (0 <= 2 * pair_count <= len(pts)):
            raise ValidationError("pair count out of range")
        pts.flags.writeable = False
        wts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        object.__setattr__(self, "pair_count", int(pair_count))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def radii(self) -> np.ndarray:
        return np.abs(self.points)

    def pair_indices(self) -> list[tuple[int, int]]:
        return [(2 * k, 2 * k + 1) for k in range(self.pair_count)]

    def singleton_indices(self) -> range:
        return range(2 * self.pair_count, self.n)

    def atoms(self) -> list[tuple[complex, float]]:
        return [(complex(p), float(w)) for p, w in zip(self.points, self.weights)]


@dataclass(frozen=True)
class CircleMass:
    """Mass and first moment of a measure restricted to one circle."""

    r: float
    mass: float
    first_moment: complex

    @property
    def center_of_mass(self) -> complex:
        return self.first_moment / self.mass


def _radial_groups(points: np.ndarray) -> list[list[int]]:
    """Indices grouped by circle, radius-sorted, tolerance-chained."""
    radii = np.abs(points)
    order = np.argsort(radii, kind="stable")
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        idx = int(idx)
        r_prev = radii[groups[-1][-1]]
        if radii[idx] - r_prev <= _radial_tol(radii[idx], r_prev):
            groups[-1].append(idx)
        else:
            groups.append([idx])
    return groups


def canonicalize(raw: PlanarAtomicMeasure) -> BiradialMeasure:
    """Validate a planar measure as biradial and put it in canonical order.

    Raises ThreeOnCircle, DuplicatePoint, NonPositiveWeight, or
    MassNotNormalizable when the input is not a biradial probability
    measure; weights off from total mass one by at most 1e-6 are
    renormalized.
    """
    pts, wts = raw.points, raw.weights
    if np.any(wts <= 0.0):
        raise NonPositiveWeight("all weights must be strictly positive")
    total = float(wts.sum())
    if total <= 0.0:
        raise MassNotNormalizable("total mass must be positive")
    if abs(total - 1.0) > MASS_TOL:
        raise MassNotNormalizable(f"total mass {total} too far from 1 to renormalize")
    wts = wts / total

    groups = _radial_groups(pts)
    pair_groups: list[list[int]] = []
    single_groups: list[list[int]] = []
    for g in groups:
        if len(g) > 2:
            r = abs(pts[g[0]])
            raise ThreeOnCircle(f"{len(g)} support points on the circle of radius {r:.6g}")
        if len(g) == 2:
            i, j = g
            r = max(abs(pts[i]), abs(pts[j]))
            if abs(pts[i] - pts[j]) <= _radial_tol(r):
                raise DuplicatePoint(f"coincident support points near {pts[i]}")
            pair_groups.append(g)
        else:
            single_groups.append(g)

    order: list[int] = []
    for g in pair_groups:
        i, j = sorted(g, key=lambda t: np.mod(np.angle(pts[t]), 2.0 * np.pi))
        order.extend([i, j])
    for g in single_groups:
        order.append(g[0])
    order_arr = np.asarray(order, dtype=int)
    return BiradialMeasure(pts[order_arr], wts[order_arr], len(pair_groups))


def inner_product(p: BiradialPoly, q: BiradialPoly, rho: BiradialMeasure) -> complex:
    """L2 inner product sum_k p(lam_k) * conj(q(lam_k)) * rho_k."""
    pv = poly_eval(p, rho.points)
    qv = poly_eval(q, rho.points)
    return complex(np.sum(pv * np.conj(qv) * rho.weights))


def circle_masses(rho) -> list[CircleMass]:
    """Group atoms by circle and report per-circle mass and first moment.

    Accepts any measure object with ``points`` and ``weights``; radii are
    mass-weighted means within each tolerance group.
    """
    pts = np.asarray(rho.points, dtype=complex)
    wts = np.asarray(rho.weights, dtype=float)
    out = []
    for g in _radial_groups(pts):
        idx = np.asarray(g, dtype=int)
        mass = float(wts[idx].sum())
        r = float(np.sum(wts[idx] * np.abs(pts[idx])) / mass)
        fm = complex(np.sum(wts[idx] * pts[idx]))
        out.append(CircleMass(r, mass, fm))
    return out


def symmetrize(mu: PlanarAtomicMeasure) -> BiradialMeasure:
    """Replace a finite planar measure by a symmetric biradial one with the
    same mixed moments of every order.

    Per circle the total mass and the first moment are preserved: a centre
    of mass on the circle keeps a single atom there; an interior nonzero
    centre of mass C spreads the mass over the antipodal points
    +-r*C/|C| with weights mass*(1 +- |C|/r)/2; C = 0 uses +-r on the real
    axis with equal weights.
    """
    wts = np.asarray(mu.weights, dtype=float)
    if np.any(wts <= 0.0):
        raise NonPositiveWeight("all weights must be strictly positive")
    total = float(wts.sum())
    if total <= 0.0:
        raise MassNotNormalizable("total mass must be positive")
    norm = PlanarAtomicMeasure(mu.points, wts / total)

    points: list[complex] = []
    weights: list[float] = []
    for cm in circle_masses(norm):
        r, mass, c = cm.r, cm.mass, cm.center_of_mass
        if r <= _radial_tol(r) * 1.0:
            points.append(0j)
            weights.append(mass)
        elif abs(abs(c) - r) <= _radial_tol(r):
            points.append(c)
            weights.append(mass)
        elif c == 0:
            points.extend([complex(r), complex(-r)])
            weights.extend([mass / 2.0, mass / 2.0])
        else:
            direction = c / abs(c)
            frac = abs(c) / r
            points.extend([r * direction, -r * direction])
            weights.extend([mass * (1.0 + frac) / 2.0, mass * (1.0 - frac) / 2.0])
    return canonicalize(PlanarAtomicMeasure(points, weights))


def equivalent_sample(rho: BiradialMeasure, angles: Iterable[float]) -> BiradialMeasure:
    """Resample every two-point circle along a new chord through its centre
    of mass, leaving mass, first moment, and hence the recurrence
    coefficients unchanged.

    ``angles`` holds one angle per pair: the new first atom is placed at
    r*exp(i*t) and the second at the other intersection of the chord
    through the centre of mass.  Raises InvalidAngle for degenerate chords
    or weights below 1e-12.
    """
    ang = list(angles)
    if len(ang) != rho.pair_count:
        raise ValidationError(f"need {rho.pair_count} angles, got {len(ang)}")
    pts = rho.points.copy()
    wts = rho.weights.copy()
    for k, t in enumerate(ang):
        i, j = 2 * k, 2 * k + 1
        r = 0.5 * (abs(pts[i]) + abs(pts[j]))
        mass = wts[i] + wts[j]
        wsum = wts[i] * pts[i] + wts[j] * pts[j]
        c = wsum / mass
        lam1 = r * np.exp(1j * float(t))
        d = c - lam1
        if abs(d) <= 1e-12 * max(1.0, r):
            raise InvalidAngle("chord through the centre of mass is undefined")
        s_star = -2.0 * float(np.real(np.conj(lam1) * d)) / abs(d) ** 2
        if s_star <= 1e-12:
            raise InvalidAngle("chord is tangent to the circle")
        lam2 = lam1 + s_star * d
        if abs(lam2 - lam1) <= _radial_tol(r):
            raise InvalidAngle("chord endpoints coincide")
        w2 = mass / s_star
        w1 = mass - w2
        if min(w1, w2) < 1e-12:
            raise InvalidAngle("chord produces a nonpositive weight")
        pts[i], pts[j] = lam1, lam2
        wts[i], wts[j] = w1, w2
    return canonicalize(PlanarAtomicMeasure(pts, wts))


def _close(a, b, tol: float) -> bool:
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def are_equivalent(rho: BiradialMeasure, rho2: BiradialMeasure, tol: float = 1e-10) -> bool:
    """True iff the two canonical measures share recurrence coefficients.

    Checks the pair count, the singleton atoms, and per two-point circle
    the radius, the total mass, and the weighted point sum.
    """
    if rho.n != rho2.n or rho.pair_count != rho2.pair_count:
        return False
    for k in range(rho.pair_count):
        i, j = 2 * k, 2 * k + 1
        r_a = 0.5 * (abs(rho.points[i]) + abs(rho.points[j]))
        r_b = 0.5 * (abs(rho2.points[i]) + abs(rho2.points[j]))
        mass_a = rho.weights[i] + rho.weights[j]
        mass_b = rho2.weights[i] + rho2.weights[j]
        sum_a = rho.weights[i] * rho.points[i] + rho.weights[j] * rho.points[j]
        sum_b = rho2.weights[i] * rho2.points[i] + rho2.weights[j] * rho2.points[j]
        if not (_close(r_a, r_b, tol) and _close(mass_a, mass_b, tol) and _close(sum_a, sum_b, tol)):
            return False
    for i in rho.singleton_indices():
        if not (_close(rho.points[i], rho2.points[i], tol) and _close(rho.weights[i], rho2.weights[i], tol)):
            return False
    return True


def measure_moments(rho: BiradialMeasure, K: int) -> MomentSequence:
    """Moments m_k = sum_j rho_j * lam_j^<k> for k = 0..K."""
    if K < 0:
        raise ValidationError("moment order must be nonnegative")
    pts = rho.points
    wts = rho.weights
    a = np.abs(pts)
    m = np.empty(K + 1, dtype=complex)
    for k in range(K + 1):
        if k % 2 == 0:
            m[k] = np.sum(wts * a**k)
        else:
            m[k] = np.sum(wts * pts * a ** (k - 1))
    return MomentSequence(m)
