"""Deterministic numerics on symmetric matrices and the positive definite cone.

This module provides the building blocks everything else rests on:

- leading principal minors and top-left block projections,
- the generalized power Delta_s(x) = Delta_1^{s1-s2} * ... * Delta_r^{s_r}
  of a positive definite matrix, evaluated in log domain through the
  Cholesky diagonal,
- the normalizing Gamma function of the cone,
  Gamma(s) = (2*pi)^(r(r-1)/4) * prod_j Gamma(s_j - (j-1)/2),
- decision procedures for the admissible shape sets: the scalar set
  Lambda = {1/2, 1, ..., (r-1)/2} united with ((r-1)/2, inf), and its
  vector generalization Xi defined by the epsilon-recursion
  u_1 = s_1, u_k = s_k - (eps(u_1) + ... + eps(u_{k-1}))/2, all u_k >= 0,
- numerical cone classification (interior / boundary / outside) and
  symmetric 2x2 block partitions.

All functions are pure; matrices are plain float64 ``numpy.ndarray`` values
and are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ConeMembershipError, NotPositiveDefiniteError, SingularRegimeError

__all__ = [
    "DEFAULT_CONE_TOL",
    "SHAPE_TOL",
    "ConeMembership",
    "XiDecision",
    "as_symmetric",
    "cholesky_lower",
    "classify_batch",
    "cone_classify",
    "cone_tolerance",
    "gamma_omega_log",
    "generalized_power",
    "in_gindikin_lambda",
    "in_gindikin_xi",
    "leading_minors",
    "log_generalized_power",
    "peirce_blocks",
    "principal_minor",
    "project_k",
]

#: Base absolute tolerance for cone membership, scaled by the largest
#: diagonal entry (floored at 1) of the matrix under test.
DEFAULT_CONE_TOL = 1e-10

#: Absolute tolerance for the shape-set decision procedures (half-integer
#: detection in Lambda, zero snapping in the Xi recursion).
SHAPE_TOL = 1e-12


def as_symmetric(x, *, tol: float = 1e-9) -> np.ndarray:
    """Validate ``x`` as a square symmetric matrix and symmetrize it.

    Parameters
    ----------
    x : array_like
        Square matrix. Entries x[i, j] and x[j, i] must agree within
        ``tol`` scaled by max(1, max|x|).
    tol : float
        Absolute symmetry tolerance (relative to the entry scale).

    Returns
    -------
    (r, r) ndarray
        Float64 copy symmetrized by averaging with its transpose.

    Raises
    ------
    ValueError
        If ``x`` is not square or not symmetric within tolerance.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    if x.shape[0] == 0:
        raise ValueError("matrix order must be >= 1")
    scale = max(1.0, float(np.abs(x).max()))
    gap = float(np.abs(x - x.T).max())
    if gap > tol * scale:
        raise ValueError(
            f"matrix is not symmetric: max |x - x^T| = {gap:.3e} exceeds "
            f"tolerance {tol * scale:.3e}"
        )
    return 0.5 * (x + x.T)


def project_k(x: np.ndarray, k: int) -> np.ndarray:
    """Top-left k x k block of ``x`` (1 <= k <= r)."""
    x = np.asarray(x, dtype=float)
    r = x.shape[0]
    if not 1 <= k <= r:
        raise ValueError(f"block order k={k} out of range [1, {r}]")
    return x[:k, :k].copy()


def principal_minor(x: np.ndarray, k: int) -> float:
    """Leading principal minor of order ``k``: det of the top-left k x k block.

    ``principal_minor(x, r)`` is the full determinant.
    """
    return float(np.linalg.det(project_k(x, k)))


def leading_minors(x: np.ndarray) -> np.ndarray:
    """All leading principal minors (Delta_1(x), ..., Delta_r(x))."""
    x = np.asarray(x, dtype=float)
    r = x.shape[0]
    return np.array([np.linalg.det(x[:k, :k]) for k in range(1, r + 1)])


def cholesky_lower(x, *, tol: float = 0.0) -> np.ndarray:
    """Lower Cholesky factor with explicit pivot checking.

    Parameters
    ----------
    x : array_like
        Symmetric matrix, positive definite up to ``tol``.
    tol : float
        Pivots must exceed this value.

    Returns
    -------
    (r, r) ndarray
        Lower triangular ``t`` with positive diagonal and ``t @ t.T == x``
        up to roundoff.

    Raises
    ------
    NotPositiveDefiniteError
        If some pivot is <= ``tol``; carries the 0-based failing index.
    """
    x = np.asarray(x, dtype=float)
    r = x.shape[0]
    t = np.zeros_like(x)
    for j in range(r):
        pivot = x[j, j] - np.dot(t[j, :j], t[j, :j])
        if pivot <= tol:
            raise NotPositiveDefiniteError(
                f"Cholesky pivot {pivot:.6e} at index {j} is <= tolerance {tol:.1e}",
                index=j,
            )
        d = np.sqrt(pivot)
        t[j, j] = d
        if j + 1 < r:
            t[j + 1 :, j] = (x[j + 1 :, j] - t[j + 1 :, :j] @ t[j, :j]) / d
    return t


def cone_tolerance(x: np.ndarray, tol: float | None = None) -> float:
    """Absolute cone tolerance for ``x``: DEFAULT_CONE_TOL scaled by the
    largest diagonal entry in magnitude, floored at 1."""
    if tol is not None:
        return float(tol)
    diag = np.abs(np.diagonal(np.asarray(x, dtype=float)))
    return DEFAULT_CONE_TOL * max(1.0, float(diag.max()))


@dataclass(frozen=True)
class ConeMembership:
    """Classification of a symmetric matrix against the cone.

    verdict is one of "interior", "boundary", "outside":

    - interior:  all leading principal minors > tolerance,
    - boundary:  all minors >= -tolerance with at least one within it,
    - outside:   some minor < -tolerance.
    """

    verdict: str
    min_leading_minor: float
    tolerance_used: float

    @property
    def is_interior(self) -> bool:
        return self.verdict == "interior"


def cone_classify(x, tol: float | None = None) -> ConeMembership:
    """Classify ``x`` relative to the positive definite cone.

    Parameters
    ----------
    x : array_like
        Symmetric matrix.
    tol : float, optional
        Absolute tolerance; defaults to ``cone_tolerance(x)``.
    """
    x = np.asarray(x, dtype=float)
    t = cone_tolerance(x, tol)
    if t <= 0:
        raise ValueError(f"tolerance must be positive, got {t!r}")
    minors = leading_minors(x)
    mmin = float(minors.min())
    if np.all(minors > t):
        verdict = "interior"
    elif np.all(minors >= -t):
        verdict = "boundary"
    else:
        verdict = "outside"
    return ConeMembership(verdict=verdict, min_leading_minor=mmin, tolerance_used=t)


def classify_batch(xs: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Vectorized ``cone_classify`` verdicts for a stack of matrices.

    Parameters
    ----------
    xs : (m, r, r) ndarray
        Stack of symmetric matrices.
    tol : float, optional
        Absolute tolerance shared by all samples; by default each sample
        uses its own ``cone_tolerance``.

    Returns
    -------
    (m,) ndarray of str
        Per-sample verdicts "interior" / "boundary" / "outside".
    """
    xs = np.asarray(xs, dtype=float)
    m, r = xs.shape[0], xs.shape[1]
    if tol is None:
        diag = np.abs(np.diagonal(xs, axis1=1, axis2=2)).max(axis=1)
        tols = DEFAULT_CONE_TOL * np.maximum(1.0, diag)
    else:
        tols = np.full(m, float(tol))
    minors = np.stack(
        [np.linalg.det(xs[:, :k, :k]) for k in range(1, r + 1)], axis=1
    )  # (m, r)
    interior = np.all(minors > tols[:, None], axis=1)
    boundary = np.all(minors >= -tols[:, None], axis=1) & ~interior
    out = np.full(m, "outside", dtype="<U8")
    out[interior] = "interior"
    out[boundary] = "boundary"
    return out


def log_generalized_power(x, s) -> float:
    """log Delta_s(x) for ``x`` in the interior of the cone.

    Evaluated through the Cholesky diagonal: with x = t t^T,

        log Delta_s(x) = sum_i 2 s_i log t_ii,

    which telescopes the minor-ratio definition
    Delta_s = prod_k Delta_k^{s_k - s_{k+1}} (s_{r+1} := 0) without forming
    the minors, whose magnitudes grow factorially.

    Parameters
    ----------
    x : array_like
        Symmetric positive definite matrix.
    s : array_like
        Real exponent vector of length r.

    Raises
    ------
    ConeMembershipError
        If ``x`` is not positive definite (Delta_s is undefined outside the
        open cone for general real exponents).
    ValueError
        If the exponent length does not match the matrix order.
    """
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    r = x.shape[0]
    if s.shape != (r,):
        raise ValueError(f"exponent length {s.shape} does not match order {r}")
    try:
        t = cholesky_lower(x)
    except NotPositiveDefiniteError as e:
        raise ConeMembershipError(
            f"generalized power undefined: leading minor of order {e.index + 1} "
            "is not strictly positive"
        ) from e
    return float(2.0 * np.dot(s, np.log(np.diagonal(t))))


def generalized_power(x, s) -> float:
    """Delta_s(x) = exp(log_generalized_power(x, s)).

    For constant s = (p, ..., p) this is det(x)**p.
    """
    return float(np.exp(log_generalized_power(x, s)))


def gamma_omega_log(s) -> float:
    """Log of the cone Gamma function,

        log Gamma(s) = (r(r-1)/4) log(2 pi) + sum_j log Gamma(s_j - (j-1)/2).

    Defined only when s_j > (j-1)/2 for all j.

    Raises
    ------
    SingularRegimeError
        If some s_j <= (j-1)/2 (no density exists there).
    """
    s = np.asarray(s, dtype=float)
    r = s.size
    shift = s - 0.5 * np.arange(r)
    bad = np.nonzero(shift <= 0.0)[0]
    if bad.size:
        j = int(bad[0])
        raise SingularRegimeError(
            f"s_{j + 1} = {s[j]!r} must exceed (i-1)/2 = {0.5 * j!r} for the "
            "Gamma function of the cone to be finite"
        )
    return float(r * (r - 1) / 4.0 * np.log(2.0 * np.pi) + gammaln(shift).sum())


def in_gindikin_lambda(p: float, r: int, *, include_zero: bool = False) -> bool:
    """Membership of the scalar shape ``p`` in the admissible set for order r,

        Lambda = {1/2, 1, ..., (r-1)/2}  union  ((r-1)/2, +inf).

    The discrete part is tested by comparing 2p against its nearest integer
    with absolute tolerance ``SHAPE_TOL``.

    Parameters
    ----------
    p : float
        Scalar shape parameter.
    r : int
        Matrix order, >= 1.
    include_zero : bool
        Admit p = 0 (the point mass at the zero matrix). Excluded by
        default.
    """
    if r < 1:
        raise ValueError(f"order r={r} must be >= 1")
    if abs(p) <= SHAPE_TOL:
        return bool(include_zero)
    if p > (r - 1) / 2.0:
        return True
    two_p = 2.0 * p
    k = round(two_p)
    return abs(two_p - k) <= SHAPE_TOL and 1 <= k <= r - 1


@dataclass(frozen=True)
class XiDecision:
    """Outcome of the vector shape admissibility test.

    Attributes
    ----------
    member : bool
        Whether ``s`` belongs to the admissible set.
    witness : ndarray or None
        The nonnegative vector u reconstructing s via the recursion, when
        member.
    failing_index : int or None
        1-based coordinate k at which u_k < 0, when not member.
    """

    member: bool
    witness: np.ndarray | None
    failing_index: int | None

    def __bool__(self) -> bool:
        return self.member


def in_gindikin_xi(s, *, tol: float = SHAPE_TOL) -> XiDecision:
    """Decide membership of the shape vector ``s`` in the admissible set.

    One left-to-right pass of the recursion

        u_1 = s_1,    u_k = s_k - (eps(u_1) + ... + eps(u_{k-1})) / 2,

    where eps(u) = 0 if u = 0 and 1 if u > 0; ``s`` is a member iff every
    u_k is nonnegative. Because eps branches exactly at zero, values of
    u_k in [-tol, 0] are snapped to 0 before applying eps, so shapes meant
    to sit on the discrete stratum (half-integer ladders) land there under
    floating point.
    """
    s = np.asarray(s, dtype=float).ravel()
    r = s.size
    if r == 0:
        raise ValueError("shape vector must be nonempty")
    u = np.empty(r)
    eps_sum = 0.0
    for k in range(r):
        uk = s[k] - 0.5 * eps_sum
        if -tol <= uk <= 0.0:
            uk = 0.0
        if uk < 0.0:
            return XiDecision(member=False, witness=None, failing_index=k + 1)
        u[k] = uk
        if uk > 0.0:
            eps_sum += 1.0
    return XiDecision(member=True, witness=u, failing_index=None)


def peirce_blocks(x, split: int):
    """Partition a symmetric matrix at row/column ``split``.

    Parameters
    ----------
    x : array_like
        Symmetric matrix of order r.
    split : int
        Block boundary, 1 <= split < r.

    Returns
    -------
    (top_left, bottom_left, bottom_right)
        The split x split leading block, the (r-split) x split strip below
        it, and the trailing (r-split) x (r-split) block. Reassembling
        them (with the strip transposed into the upper right) reproduces
        ``x`` exactly.
    """
    x = np.asarray(x, dtype=float)
    r = x.shape[0]
    if not 1 <= split < r:
        raise ValueError(f"split={split} out of range [1, {r - 1}]")
    return (
        x[:split, :split].copy(),
        x[split:, :split].copy(),
        x[split:, split:].copy(),
    )
