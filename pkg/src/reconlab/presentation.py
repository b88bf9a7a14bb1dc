"""Vector presentations of PSD matrices and their rank-one perturbation path.

A presentation of a PSD matrix A is an ordered set of n column vectors U with
U^T U = A. "Good position" means the origin is interior to conv(U) and conv(U)
has dimension n-1; numerically this is rank(A) = n-1 together with a strictly
positive kernel vector. Translating a presentation along the projection u0 of
the origin onto its affine hull realizes the family A + t*J geometrically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BadPosition,
    ConsistencyError,
    DimensionMismatch,
    NotPositiveDefinite,
    NotPositiveSemidefinite,
)
from .matrixcore import SymmetricMatrix, as_matrix

PSD_TOL_FACTOR = 1e-10
PD_TOL_FACTOR = 1e-10
RANK_TOL_FACTOR = 1e-10
POS_MARGIN = 1e-12
_KERNEL_POS_TOL = 1e-12


@dataclass(frozen=True)
class Presentation:
    """n vectors in R^n stored as the columns of an n x n array."""

    columns: np.ndarray

    def __post_init__(self):
        c = np.array(self.columns, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise DimensionMismatch(f"presentation must be a square array, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "columns", c)

    @property
    def n(self) -> int:
        return self.columns.shape[1]

    def vector(self, i: int) -> np.ndarray:
        return self.columns[:, i]

    def gram(self) -> SymmetricMatrix:
        g = self.columns.T @ self.columns
        return SymmetricMatrix(0.5 * (g + g.T))


class GoodPositionReason(enum.Enum):
    RANK_NOT_N_MINUS_1 = "RankNotNMinus1"
    KERNEL_SIGN_MIXED = "KernelSignMixed"
    GOOD = "Good"


@dataclass(frozen=True)
class GoodPositionReport:
    rank: int
    kernel_vector: Optional[np.ndarray]
    is_good: bool
    reason: GoodPositionReason


@dataclass(frozen=True)
class PerturbationPath:
    """State of the translation u_i -> u_i - s*u0; t = (s^2 - 2s)*|u0|^2."""

    u0: np.ndarray
    u0_norm_sq: float
    s: float
    t: float


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)


def _check_psd(A: SymmetricMatrix) -> np.ndarray:
    """Ascending eigenvalues, raising if the smallest is below -psdTol."""
    w = np.linalg.eigvalsh(A.entries)
    tol = PSD_TOL_FACTOR * _scale(A.entries)
    if w[0] < -tol:
        raise NotPositiveSemidefinite(f"min eigenvalue {w[0]:.3e} below -{tol:.3e}")
    return w


def require_positive_definite(A: SymmetricMatrix) -> None:
    w = np.linalg.eigvalsh(A.entries)
    tol = PD_TOL_FACTOR * _scale(A.entries)
    if w[0] < tol:
        raise NotPositiveDefinite(f"min eigenvalue {w[0]:.3e} below PD tolerance {tol:.3e}")


def factor_presentation(A: SymmetricMatrix) -> Presentation:
    """U = Lambda^(1/2) Q^T from A = Q Lambda Q^T; tiny negative eigenvalues clip to 0."""
    A = as_matrix(A)
    _check_psd(A)
    w, q = np.linalg.eigh(A.entries)
    w = np.clip(w, 0.0, None)
    u = np.sqrt(w)[:, None] * q.T
    return Presentation(u)


def good_position_report(A: SymmetricMatrix) -> GoodPositionReport:
    """Rank test plus sign test on the kernel vector.

    The geometric condition (origin interior to conv U, hull dimension n-1)
    is certified through the equivalent algebraic one: rank n-1 and a kernel
    vector with strictly one-signed entries. The kernel vector is normalized
    to unit 1-norm with its first nonzero entry positive.
    """
    A = as_matrix(A)
    w = _check_psd(A)
    thresh = RANK_TOL_FACTOR * max(abs(w[0]), abs(w[-1]))
    rank = int(np.sum(w > thresh))
    if rank != A.n - 1:
        return GoodPositionReport(rank=rank, kernel_vector=None, is_good=False,
                                  reason=GoodPositionReason.RANK_NOT_N_MINUS_1)
    _, vecs = np.linalg.eigh(A.entries)
    alpha = vecs[:, 0]
    lead = next((i for i in range(A.n) if abs(alpha[i]) > _KERNEL_POS_TOL), 0)
    if alpha[lead] < 0:
        alpha = -alpha
    alpha = alpha / np.sum(np.abs(alpha))
    alpha.setflags(write=False)
    if np.min(alpha) <= _KERNEL_POS_TOL:
        return GoodPositionReport(rank=rank, kernel_vector=alpha, is_good=False,
                                  reason=GoodPositionReason.KERNEL_SIGN_MIXED)
    return GoodPositionReport(rank=rank, kernel_vector=alpha, is_good=True,
                              reason=GoodPositionReason.GOOD)


def span_basis(columns: np.ndarray, rank: Optional[int] = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the column span, via SVD."""
    u, s, _ = np.linalg.svd(columns)
    if rank is None:
        tol = RANK_TOL_FACTOR * (s[0] if s.size else 0.0)
        rank = int(np.sum(s > tol))
    return u[:, :rank]


def volume_eigenvector(U: Presentation) -> np.ndarray:
    """Kernel direction recovered from leave-one-out simplex volumes.

    alpha_i is the (n-1)-volume of conv{0, u_1, ..., without u_i, ..., u_n},
    computed as |det| of the leave-one-out coordinate matrix in an orthonormal
    basis of span(U), over (n-1)!. Returned with unit sum.
    """
    n = U.n
    report = good_position_report(U.gram())
    if not report.is_good:
        raise BadPosition(f"presentation not in good position: {report.reason.value}")
    q = span_basis(U.columns, rank=n - 1)
    coords = q.T @ U.columns
    fact = float(math.factorial(n - 1))
    alpha = np.empty(n)
    for i in range(n):
        sub = np.delete(coords, i, axis=1)
        alpha[i] = abs(np.linalg.det(sub)) / fact
    return alpha / np.sum(alpha)


def project_origin(U: Presentation) -> PerturbationPath:
    """Projection u0 of the origin onto aff(U), with |u0|^2 = 1/(1^T A^-1 1).

    Both closed forms, U A^-1 1 / (1^T A^-1 1) and (U^T)^-1 1 scaled the same
    way, are evaluated and must agree; disagreement signals ill conditioning.
    """
    A = U.gram()
    require_positive_definite(A)
    ones = np.ones(U.n)
    x = np.linalg.solve(A.entries, ones)
    denom = float(ones @ x)
    norm_sq = 1.0 / denom
    u0 = (U.columns @ x) * norm_sq
    u0_alt = np.linalg.solve(U.columns.T, ones) * norm_sq
    gap = float(np.max(np.abs(u0 - u0_alt)))
    if gap > 1e-10 * max(1.0, float(np.max(np.abs(u0)))):
        raise ConsistencyError(f"u0 closed forms disagree by {gap:.3e}")
    u0.setflags(write=False)
    return PerturbationPath(u0=u0, u0_norm_sq=norm_sq, s=0.0, t=0.0)


def perturb_presentation(U: Presentation, s: float) -> Presentation:
    """The translated family {u_i - s*u0}; its Gram is A + (s^2-2s)|u0|^2 J."""
    path = project_origin(U)
    return Presentation(U.columns - s * path.u0[:, None])


def perturbation_path(U: Presentation, s: float) -> PerturbationPath:
    base = project_origin(U)
    return PerturbationPath(u0=base.u0, u0_norm_sq=base.u0_norm_sq, s=s,
                            t=(s * s - 2.0 * s) * base.u0_norm_sq)


def t_of_lambda(A: SymmetricMatrix, lam: float) -> float:
    """-1 / (1^T (A + lam*I)^-1 1); requires A + lam*I positive definite."""
    A = as_matrix(A)
    shifted = SymmetricMatrix(A.entries + lam * np.eye(A.n))
    require_positive_definite(shifted)
    ones = np.ones(A.n)
    x = np.linalg.solve(shifted.entries, ones)
    return float(-1.0 / (ones @ x))


def _positivity_margin_ok(A: SymmetricMatrix, lam: float, margin: float) -> bool:
    shifted = A.entries + lam * np.eye(A.n)
    w = np.linalg.eigvalsh(shifted)
    if w[0] < PD_TOL_FACTOR * _scale(shifted):
        return False
    x = np.linalg.solve(shifted, np.ones(A.n))
    return bool(np.min(x) >= margin)


def lambda0_certified(A: SymmetricMatrix, lam: float, margin: float = POS_MARGIN) -> bool:
    """(A + c*I)^-1 1 strictly positive with margin, at c in {lam, 2*lam, 10*lam}."""
    A = as_matrix(A)
    return all(_positivity_margin_ok(A, c, margin) for c in (lam, 2 * lam, 10 * lam))


def lambda0_search(A: SymmetricMatrix, margin: float = POS_MARGIN,
                   bisect_steps: int = 40) -> float:
    """A shift lambda0 past which the inverse applied to the ones vector stays positive.

    Start at operator-norm + 1, double until the certificate holds, then
    bisect downward. Tightening is best effort; the returned value is always
    re-certified (existence is guaranteed for large shifts, minimality is not).
    """
    A = as_matrix(A)
    op_norm = float(np.max(np.abs(np.linalg.eigvalsh(A.entries)))) if A.n else 0.0
    hi = op_norm + 1.0
    doublings = 0
    while not lambda0_certified(A, hi, margin):
        hi *= 2.0
        doublings += 1
        if doublings > 200:
            raise RuntimeError("lambda0 doubling failed to certify; check inputs")
    lo = hi / 2.0
    for _ in range(bisect_steps):
        mid = 0.5 * (lo + hi)
        if lambda0_certified(A, mid, margin):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class InteriorReport:
    """Theorem-level equivalence audit: both routes reported, never collapsed."""

    cond2: bool
    cond3: bool
    weights: np.ndarray


def per1_report(A: SymmetricMatrix) -> InteriorReport:
    """Audit the equivalence 'u0 interior to conv U' <=> 'A^-1 1 positive'.

    cond3 reads the sign of A^-1 1 directly. cond2 re-derives u0's barycentric
    weights w = A^-1 1 / (1^T A^-1 1) inside a freshly factored presentation,
    verifies U w = u0 and 1^T w = 1, then reads their signs.
    """
    A = as_matrix(A)
    require_positive_definite(A)
    ones = np.ones(A.n)
    x = np.linalg.solve(A.entries, ones)
    cond3 = bool(np.min(x) > 0.0)

    U = factor_presentation(A)
    path = project_origin(U)
    w = x / float(ones @ x)
    resid = float(np.max(np.abs(U.columns @ w - path.u0)))
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(path.u0)))):
        raise ConsistencyError(f"barycentric reconstruction residual {resid:.3e}")
    if abs(float(np.sum(w)) - 1.0) > 1e-10:
        raise ConsistencyError("barycentric weights do not sum to 1")
    cond2 = bool(np.min(w) > 0.0)
    w.setflags(write=False)
    return InteriorReport(cond2=cond2, cond3=cond3, weights=w)
