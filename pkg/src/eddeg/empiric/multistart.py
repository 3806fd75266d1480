"""
Multistart oracle: rediscover the stationary set by descent alone.

Descent on the distance to A from random starts only finds minimizers.
To reach every stationary point, start i >= 1 descends on a reweighted
anchor A~ whose distance function has the same stationary set as A's but
a different minimizer:

- symmetric models: A~ = p(A) for a random Chebyshev series p; p(A)
  commutes with exactly the matrices A commutes with;
- Schubert: the same transform on the inner block of Q^T A Q;
- Stiefel: A~ = M h(M^T M) B^{-1/2} with M = A B^{1/2}, which keeps the
  singular vectors of M and randomizes the signs of its singular values.

Every converged iterate is then re-certified against A itself, and the
survivors are clustered by single linkage.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from tqdm import tqdm

from eddeg.config import (
    CLUSTER_TOL,
    MEMBERSHIP_TOL,
    MIN_REWEIGHT_DEGREE,
    ORACLE_CERTIFY_TOL,
    DescentParams,
)
from eddeg.empiric.descent import riemannian_descent
from eddeg.errors import NoConvergence
from eddeg.matcore.sampling import derive_seed
from eddeg.models.base import ModelSpec
from eddeg.models.schubert import SchubertSpec
from eddeg.models.stiefel import StiefelSpec

logger = logging.getLogger(__name__)


@dataclass
class MultistartResult:
    """Cluster representatives plus bookkeeping of what was discarded."""

    representatives: List[np.ndarray] = field(default_factory=list)
    cluster_sizes: List[int] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    n_starts: int = 0
    n_converged: int = 0
    n_dropped: int = 0
    n_rejected: int = 0


# ---------------------------------------------------------------------------
# Reweighting
# ---------------------------------------------------------------------------


def chebyshev_series(S: np.ndarray, coeffs: Sequence[float]) -> np.ndarray:
    """sum_j coeffs[j] T_j(S) for a symmetric S with spectrum in [-1, 1] (Clenshaw)."""
    n = S.shape[0]
    eye = np.eye(n)
    b1 = np.zeros((n, n))
    b2 = np.zeros((n, n))
    for c in reversed(list(coeffs)[1:]):
        b1, b2 = 2.0 * (S @ b1) - b2 + c * eye, b1
    out = S @ b1 - b2 + coeffs[0] * eye
    return 0.5 * (out + out.T)


def _random_series(S: np.ndarray, rng: np.random.Generator, degree: int) -> np.ndarray:
    coeffs = np.concatenate([[0.0], rng.standard_normal(degree)])
    return chebyshev_series(S, coeffs)


def _rescaled(M: np.ndarray, target_norm: float) -> np.ndarray:
    norm = float(np.linalg.norm(M))
    return M if norm == 0.0 else M * (target_norm / norm)


def spectral_reweight(
    model: ModelSpec,
    A: np.ndarray,
    rng: np.random.Generator,
    degree: Optional[int] = None,
) -> np.ndarray:
    """Random anchor with the same stationary set as A, rescaled to ||A||_F.

    ``degree`` defaults to max(8, 4 n).
    """
    A = model.check_shape(A)
    n = A.shape[0]
    degree = degree or max(MIN_REWEIGHT_DEGREE, 4 * n)
    target = float(np.linalg.norm(A))

    if isinstance(model, StiefelSpec):
        M = A @ model.b_sqrt
        G = M.T @ M
        rho = float(np.linalg.norm(G, 2))
        if rho == 0.0:
            return A.copy()
        h = _random_series(2.0 * G / rho - np.eye(model.k), rng, degree)
        return _rescaled(M @ h @ model.b_inv_sqrt, target)

    if isinstance(model, SchubertSpec):
        Y = model.in_frame(A)
        inner = model.extract(A)
        if inner.shape[0] > 0:
            rho = float(np.linalg.norm(inner, 2))
            if rho > 0.0:
                inner_norm = float(np.linalg.norm(inner))
                inner = _rescaled(_random_series(inner / rho, rng, degree), inner_norm)
            Y[model.inner_slice, model.inner_slice] = inner
        out = model.Q @ Y @ model.Q.T
        return 0.5 * (out + out.T)

    rho = float(np.linalg.norm(A, 2))
    if rho == 0.0:
        return A.copy()
    return _rescaled(_random_series(A / rho, rng, degree), target)


# ---------------------------------------------------------------------------
# Multistart
# ---------------------------------------------------------------------------


def _cluster_labels(points: List[np.ndarray], threshold: float) -> np.ndarray:
    if len(points) == 1:
        return np.array([1])
    flat = np.stack([p.ravel() for p in points])
    Z = linkage(flat, method="single", metric="euclidean")
    return fcluster(Z, t=threshold, criterion="distance")


def multistart(
    model: ModelSpec,
    A: np.ndarray,
    n_starts: int,
    seed: int,
    params: Optional[DescentParams] = None,
    *,
    starts: Optional[Sequence[np.ndarray]] = None,
    reweight: bool = True,
    reweight_degree: Optional[int] = None,
    cluster_tol: float = CLUSTER_TOL,
    certify_tol: float = ORACLE_CERTIFY_TOL,
    progress: bool = False,
) -> MultistartResult:
    """Run descent from ``n_starts`` seeded starts and cluster the limits.

    Start i draws ``random_point(model, derive_seed(seed, i))`` unless
    ``starts`` supplies it. Start 0 always descends on A itself; later
    starts descend on ``spectral_reweight`` anchors when ``reweight``.
    Non-converged runs are dropped; converged iterates whose residual
    against A exceeds ``certify_tol * (1 + ||A||_F)`` are rejected.

    Returns
    -------
    MultistartResult
        One representative per cluster (the member with the smallest
        residual), clusters ordered by first appearance.
    """
    if n_starts < 1:
        raise ValueError(f"n_starts must be >= 1, got {n_starts}")
    if starts is not None and len(starts) < n_starts:
        raise ValueError(f"{n_starts} starts requested, {len(starts)} supplied")

    A = model.check_shape(A)
    scale = 1.0 + float(np.linalg.norm(A))
    result = MultistartResult(n_starts=n_starts)
    found: List[np.ndarray] = []
    found_residuals: List[float] = []

    for i in tqdm(range(n_starts), desc="descent starts", disable=not progress, leave=False):
        X0 = starts[i] if starts is not None else model.random_point(derive_seed(seed, i))
        if i == 0 or not reweight:
            driver = A
        else:
            rng = np.random.default_rng(derive_seed(seed, i, 1))
            driver = spectral_reweight(model, A, rng, degree=reweight_degree)

        try:
            run = riemannian_descent(model, driver, X0, params)
        except NoConvergence as e:
            result.n_dropped += 1
            logger.debug("Start %d dropped: %s", i, e)
            continue
        result.n_converged += 1

        X = run.X
        residual = float(np.linalg.norm(model.project_tangent(X, X - A)))
        membership = model.membership_residual(X)
        if residual > certify_tol * scale or membership > MEMBERSHIP_TOL * scale:
            result.n_rejected += 1
            logger.debug("Start %d rejected (residual %.3e, membership %.3e)", i, residual, membership)
            continue
        found.append(X)
        found_residuals.append(residual)

    if found:
        labels = _cluster_labels(found, cluster_tol * scale)
        order: List[int] = []
        for lab in labels:
            if lab not in order:
                order.append(lab)
        for lab in order:
            members = [j for j, x in enumerate(labels) if x == lab]
            best = min(members, key=lambda j: found_residuals[j])
            result.representatives.append(found[best])
            result.residuals.append(found_residuals[best])
            result.cluster_sizes.append(len(members))

    logger.info(
        "Multistart on %s: %d starts, %d converged, %d dropped, %d rejected, %d clusters",
        model.kind,
        n_starts,
        result.n_converged,
        result.n_dropped,
        result.n_rejected,
        len(result.representatives),
    )
    return result
