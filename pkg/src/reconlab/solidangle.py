"""Simplicial cones and their ball-volume norms.

A cone is the set of nonnegative combinations of its generators (the vectors
u_i - u for an apex u); its norm is the volume of the intersection with the
unit ball of a declared ambient dimension, reported as a fraction of the ball.

Ambient convention: the fraction is measured in `ambient_dim`, defaulting to
the dimension of the generator span. A declared ambient strictly above the
span dimension makes the cone measure zero and the fraction exactly 0. This
convention makes the norm invariant under orthogonal maps and lets cones
living in different coordinate spaces be compared through congruence.

Directional sampling: since a cone is radial, the fraction of the ball inside
it equals the fraction of unit directions inside it, so the Monte Carlo path
samples Gaussian-normalized directions in span coordinates. Sampling is
chunked with a counter-based substream per chunk, so the estimate for a given
(seed, samples) pair is bit-identical no matter how chunks are scheduled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadPosition,
    DimensionMismatch,
    NonSimplicialCone,
    NotNested,
    PreconditionViolated,
)
from .presentation import Presentation, good_position_report

COEF_TOL = 1e-12
SPAN_TOL_FACTOR = 1e-10
RANK_TOL_FACTOR = 1e-10
CHUNK_SIZE = 1 << 16
_INTERIOR_TOL = 1e-12


class AngleMethod(enum.Enum):
    MONTE_CARLO = "MonteCarlo"
    EXACT_2D = "Exact2D"
    EXACT_3D = "Exact3D"


def ball_volume(d: int) -> float:
    """Volume of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1)."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


@dataclass(frozen=True)
class Cone:
    """Apex plus generator vectors (rows); ambient_dim defaults to span dim."""

    apex: np.ndarray
    generators: np.ndarray
    ambient_dim: Optional[int] = None

    def __post_init__(self):
        apex = np.array(self.apex, dtype=float)
        gens = np.atleast_2d(np.array(self.generators, dtype=float))
        if gens.shape[0] < 1:
            raise NonSimplicialCone("at least one generator required")
        if apex.shape != (gens.shape[1],):
            raise DimensionMismatch(f"apex in R^{apex.shape}, generators in R^{gens.shape[1]}")
        if self.ambient_dim is not None and self.ambient_dim > gens.shape[1]:
            raise DimensionMismatch("ambient_dim exceeds coordinate dimension")
        apex.setflags(write=False)
        gens.setflags(write=False)
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "generators", gens)

    @property
    def k(self) -> int:
        return self.generators.shape[0]

    @classmethod
    def from_points(cls, apex, points, ambient_dim: Optional[int] = None) -> "Cone":
        apex = np.asarray(apex, dtype=float)
        gens = np.asarray(points, dtype=float) - apex
        return cls(apex=apex, generators=gens, ambient_dim=ambient_dim)


@dataclass(frozen=True)
class SolidAngleEstimate:
    fraction: float
    abs_norm: float
    std_error: float
    samples: int
    method: AngleMethod


def _span_data(cone: Cone):
    """(orthonormal basis of span as columns, span rank); raises if dependent."""
    g = cone.generators.T  # columns are generators
    u, s, _ = np.linalg.svd(g, full_matrices=False)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > RANK_TOL_FACTOR * smax)) if smax > 0 else 0
    if rank < cone.k:
        raise NonSimplicialCone(f"{cone.k} generators span only {rank} dimensions")
    return u[:, :rank], rank


def cone_contains(cone: Cone, x) -> bool:
    """Membership of the vector x (taken relative to the cone vertex at 0).

    True iff x lies in the generator span and its unique expansion
    coefficients are all >= -coefTol. Boundary points count as inside.
    """
    q, rank = _span_data(cone)
    x = np.asarray(x, dtype=float)
    coords = q.T @ x
    resid = float(np.linalg.norm(x - q @ coords))
    if resid > SPAN_TOL_FACTOR * max(1.0, float(np.linalg.norm(x))):
        return False
    coef = np.linalg.solve(q.T @ cone.generators.T, coords)
    return bool(np.min(coef) >= -COEF_TOL)


def _estimate(fraction: float, d: int, std_error: float, samples: int,
              method: AngleMethod) -> SolidAngleEstimate:
    return SolidAngleEstimate(fraction=float(fraction), abs_norm=float(fraction) * ball_volume(d),
                              std_error=float(std_error), samples=samples, method=method)


def _exact_2d(cone: Cone, d: int) -> SolidAngleEstimate:
    # planar angle via atan2(|cross|, dot), robust near 0 and pi
    g1, g2 = cone.generators
    dot = float(g1 @ g2)
    cross_sq = float(g1 @ g1) * float(g2 @ g2) - dot * dot
    angle = math.atan2(math.sqrt(max(cross_sq, 0.0)), dot)
    return _estimate(angle / (2.0 * math.pi), d, 0.0, 0, AngleMethod.EXACT_2D)


def _exact_3d(cone: Cone, d: int) -> SolidAngleEstimate:
    """Spherical-triangle solid angle (van Oosterom-Strackee), over 4*pi."""
    q, _ = _span_data(cone)
    g = (q.T @ cone.generators.T).T  # 3 generators in span coordinates
    g = g / np.linalg.norm(g, axis=1)[:, None]
    numer = abs(float(np.linalg.det(g)))
    denom = 1.0 + float(g[0] @ g[1]) + float(g[1] @ g[2]) + float(g[2] @ g[0])
    omega = 2.0 * math.atan2(numer, denom)
    return _estimate(omega / (4.0 * math.pi), d, 0.0, 0, AngleMethod.EXACT_3D)


def _monte_carlo(cone: Cone, q: np.ndarray, d: int, samples: int, seed: int) -> SolidAngleEstimate:
    coef_matrix = q.T @ cone.generators.T  # d x d, invertible for simplicial cones
    lu_inv = np.linalg.inv(coef_matrix)
    hits = 0
    done = 0
    chunk_index = 0
    while done < samples:
        count = min(CHUNK_SIZE, samples - done)
        rng = np.random.default_rng([seed, chunk_index])
        z = rng.standard_normal((count, d))
        norms = np.linalg.norm(z, axis=1)
        norms[norms == 0.0] = 1.0
        z /= norms[:, None]
        coefs = lu_inv @ z.T
        hits += int(np.sum(np.all(coefs >= -COEF_TOL, axis=0)))
        done += count
        chunk_index += 1
    fraction = hits / samples
    std_error = math.sqrt(fraction * (1.0 - fraction) / samples)
    return _estimate(fraction, d, std_error, samples, AngleMethod.MONTE_CARLO)


def _zero_method(d: int) -> AngleMethod:
    if d == 2:
        return AngleMethod.EXACT_2D
    if d == 3:
        return AngleMethod.EXACT_3D
    return AngleMethod.MONTE_CARLO


def angle_fraction(cone: Cone, samples: int = 200_000, seed: int = 0x5EED,
                   force_monte_carlo: bool = False) -> SolidAngleEstimate:
    """Fraction of the ambient unit ball covered by the cone.

    Dispatch: span below ambient gives exact 0 (lower-dimensional cones have
    measure zero); ambient 2 uses the planar angle; ambient 3 with three
    generators uses the spherical-triangle closed form; everything else is
    chunk-deterministic Monte Carlo over directions. `force_monte_carlo`
    samples even where a closed form exists, for cross-validation.
    """
    if samples < 1:
        raise PreconditionViolated("samples must be >= 1")
    q, rank = _span_data(cone)
    d = cone.ambient_dim if cone.ambient_dim is not None else rank
    if rank > d:
        raise DimensionMismatch(f"generators span {rank} dimensions, ambient is {d}")
    if rank < d:
        return _estimate(0.0, d, 0.0, 0, _zero_method(d))
    if not force_monte_carlo:
        if d == 2:
            return _exact_2d(cone, d)
        if d == 3 and cone.k == 3:
            return _exact_3d(cone, d)
    return _monte_carlo(cone, q, d, samples, seed)


def combined_std_error(*estimates: SolidAngleEstimate) -> float:
    return math.sqrt(sum(e.std_error ** 2 for e in estimates))


def monotonicity_check(cone_inner: Cone, cone_outer: Cone, samples: int = 200_000,
                       seed: int = 0x5EED) -> bool:
    """Nested cones must have ordered norms, up to 4 combined standard errors."""
    if not np.allclose(cone_inner.apex, cone_outer.apex, atol=1e-12):
        raise NotNested("cones must share the apex")
    for g in cone_inner.generators:
        if not cone_contains(cone_outer, g):
            raise NotNested("inner generator outside the outer cone")
    inner = angle_fraction(cone_inner, samples, seed)
    outer = angle_fraction(cone_outer, samples, seed + 1)
    return inner.fraction <= outer.fraction + 4.0 * combined_std_error(inner, outer)


def _simplex_coefficients(apex: np.ndarray, points: np.ndarray, target: np.ndarray):
    """Coefficients alpha with target - apex = sum alpha_i (p_i - apex), or None."""
    gens = (points - apex).T
    rhs = target - apex
    coef, resid, rank, _ = np.linalg.lstsq(gens, rhs, rcond=None)
    if rank < gens.shape[1]:
        return None
    if float(np.linalg.norm(gens @ coef - rhs)) > 1e-9 * max(1.0, float(np.linalg.norm(rhs))):
        return None
    return coef


@dataclass(frozen=True)
class ComparisonReport:
    lhs: SolidAngleEstimate
    rhs: SolidAngleEstimate
    strict: bool
    inconclusive: bool
    violated: bool
    margin: float


def _verdict(lhs: SolidAngleEstimate, rhs: SolidAngleEstimate):
    """Strictness of rhs > lhs with a 4-sigma margin; closer calls are inconclusive."""
    margin = 4.0 * combined_std_error(lhs, rhs)
    diff = rhs.fraction - lhs.fraction
    strict = diff > margin
    violated = diff < -margin
    inconclusive = not strict and not violated
    return strict, inconclusive, violated, margin


def comparison_check(u, points: Sequence, v, samples: int = 200_000,
                     seed: int = 0x5EED) -> ComparisonReport:
    """Moving the apex to an interior point of the hull must enlarge the angle.

    Preconditions: the cone at u is simplicial with positive norm, and v is
    strictly interior to conv({u} union points): with the apex translated to
    the origin, v = sum alpha_i u_i with every alpha_i > 0 and sum alpha < 1.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    pts = np.asarray(points, dtype=float)
    coef = _simplex_coefficients(u, pts, v)
    if coef is None:
        raise PreconditionViolated("v is not in the affine span of the simplex at u")
    if np.min(coef) <= _INTERIOR_TOL or float(np.sum(coef)) >= 1.0 - _INTERIOR_TOL:
        raise PreconditionViolated("v is not strictly interior to conv({u} U points)")
    lhs_cone = Cone.from_points(u, pts)
    rhs_cone = Cone.from_points(v, pts)
    lhs = angle_fraction(lhs_cone, samples, seed)
    rhs = angle_fraction(rhs_cone, samples, seed + 1)
    strict, inconclusive, violated, margin = _verdict(lhs, rhs)
    return ComparisonReport(lhs=lhs, rhs=rhs, strict=strict, inconclusive=inconclusive,
                            violated=violated, margin=margin)


@dataclass(frozen=True)
class DisplacementReport:
    lhs: SolidAngleEstimate
    rhs: SolidAngleEstimate
    rhs_congruent: SolidAngleEstimate
    gram_residual: float
    strict: bool
    inconclusive: bool
    violated: bool
    margin: float


def displacement_check(u, points: Sequence, v, samples: int = 200_000,
                       seed: int = 0x5EED) -> DisplacementReport:
    """Displacing the apex orthogonally off the configuration shrinks the angle.

    Preconditions: (u - v) orthogonal to every u - u_i, u != v, and the
    projection of u onto aff(points) interior to the hull. Both cones are
    measured in the common span dimension of their generator systems; the
    displaced cone is cross-checked against its congruent in-span image
    v' = u + (1 - sqrt(|v-u|^2/|u0-u|^2 + 1)) (u0 - u), whose Gram matches.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    pts = np.asarray(points, dtype=float)
    if np.linalg.norm(u - v) <= _INTERIOR_TOL:
        raise PreconditionViolated("u and v must differ")
    gens_u = pts - u
    dots = gens_u @ (u - v)
    if float(np.max(np.abs(dots))) > 1e-9 * max(1.0, float(np.max(np.abs(gens_u))) * float(np.linalg.norm(u - v))):
        raise PreconditionViolated("u - v is not orthogonal to the u-generators")

    # projection of u onto aff(points): affine weights must be strictly positive
    k = pts.shape[0]
    base = pts[0]
    directions = (pts[1:] - base).T
    sol, _, rank, _ = np.linalg.lstsq(directions, u - base, rcond=None)
    if rank < k - 1:
        raise PreconditionViolated("affine hull of points is degenerate")
    weights = np.concatenate([[1.0 - float(np.sum(sol))], sol])
    if np.min(weights) <= _INTERIOR_TOL:
        raise PreconditionViolated("projection of u is not interior to conv(points)")
    u0 = base + directions @ sol

    lhs_cone = Cone.from_points(u, pts)
    rhs_cone = Cone.from_points(v, pts)
    _, rank_lhs = _span_data(lhs_cone)
    _, rank_rhs = _span_data(rhs_cone)
    d = max(rank_lhs, rank_rhs)
    lhs = angle_fraction(Cone.from_points(u, pts, ambient_dim=d), samples, seed)
    rhs = angle_fraction(Cone.from_points(v, pts, ambient_dim=d), samples, seed + 1)

    dist_sq = float((v - u) @ (v - u))
    u0_sq = float((u0 - u) @ (u0 - u))
    vprime = u + (1.0 - math.sqrt(dist_sq / u0_sq + 1.0)) * (u0 - u)
    gram_v = (pts - v) @ (pts - v).T
    gram_vp = (pts - vprime) @ (pts - vprime).T
    gram_residual = float(np.max(np.abs(gram_v - gram_vp)))
    rhs_congruent = angle_fraction(Cone.from_points(vprime, pts, ambient_dim=d), samples, seed + 2)

    strict, inconclusive, violated, margin = _verdict(rhs, lhs)  # expects lhs > rhs
    return DisplacementReport(lhs=lhs, rhs=rhs, rhs_congruent=rhs_congruent,
                              gram_residual=gram_residual, strict=strict,
                              inconclusive=inconclusive, violated=violated, margin=margin)


@dataclass(frozen=True)
class PartitionReport:
    sum_fraction: float
    ok: bool
    fractions: tuple
    combined_std_error: float


def partition_check(U: Presentation, samples: int = 200_000, seed: int = 0x5EED) -> PartitionReport:
    """Leave-one-out cones of a good-position presentation tile the ball.

    The n cones cone(0, U without u_i), measured in the (n-1)-dimensional
    span, must have fractions summing to 1.
    """
    report = good_position_report(U.gram())
    if not report.is_good:
        raise BadPosition(f"presentation not in good position: {report.reason.value}")
    n = U.n
    estimates = []
    for i in range(n):
        gens = np.delete(U.columns, i, axis=1).T
        cone = Cone(apex=np.zeros(U.columns.shape[0]), generators=gens, ambient_dim=None)
        estimates.append(angle_fraction(cone, samples, seed + i))
    total = float(sum(e.fraction for e in estimates))
    err = combined_std_error(*estimates)
    ok = abs(total - 1.0) <= 4.0 * err + 1e-9
    return PartitionReport(sum_fraction=total, ok=ok,
                           fractions=tuple(e.fraction for e in estimates),
                           combined_std_error=err)
