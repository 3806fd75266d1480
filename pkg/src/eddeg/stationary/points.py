"""
Closed-form stationary points of the distance function on each model.

- Flag: X = Q diag(b_{f(1)}, ..., b_{f(n)}) Q^T over all block assignments
  f, Q the eigenbasis of A with eigenvalues decreasing.
- Grassmann: a on a k-subset of the eigenpositions of A, b elsewhere.
- Schubert: the same on the inner block B33 = V D V^T, embedded back.
- Stiefel: X = U_k diag(eps) V^T B^{1/2} over all sign vectors eps, where
  A B^{1/2} = U [C; 0] V^T.

Points come out in canonical label order; every point carries its
membership and stationarity residuals as a certificate independent of
the formulas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial.distance import pdist

from eddeg.config import DEFAULT_GAP_TOL, ENUMERATION_CAP, ON_MODEL_TOL
from eddeg.errors import ParameterOrderViolation, ShapeMismatch
from eddeg.matcore.combinatorics import (
    BlockAssignment,
    SignVector,
    Subset,
    block_assignments,
    k_subsets,
    sign_vectors,
    subset_str,
)
from eddeg.models import isospectral
from eddeg.models.base import ModelSpec
from eddeg.models.flag import FlagSpec, GrassmannSpec
from eddeg.models.schubert import SchubertSpec
from eddeg.models.stiefel import StiefelSpec
from eddeg.stationary.spectral import SpectralData, check_generic, prepare_anchor

logger = logging.getLogger(__name__)

Label = Union[BlockAssignment, Subset, SignVector]


@dataclass(frozen=True, eq=False)
class StationaryPoint:
    """A stationary point of X -> 1/2 ||X - A||_F^2 on a model."""

    label: Label
    X: np.ndarray
    objective: float
    grad_residual: float
    membership: float

    @property
    def label_text(self) -> str:
        return label_text(self.label)


def label_text(label: Label) -> str:
    """Canonical string: [1,1,2] for assignments, {1,3} for subsets, (+,-) for signs."""
    if isinstance(label, (BlockAssignment, SignVector)):
        return str(label)
    return subset_str(label)


def objective(A: np.ndarray, X: np.ndarray) -> float:
    """1/2 sum (x_ij - a_ij)^2.

    Raises
    ------
    ShapeMismatch
        If the shapes differ.
    """
    A_arr = np.asarray(A, dtype=float)
    X_arr = np.asarray(X, dtype=float)
    if A_arr.shape != X_arr.shape:
        raise ShapeMismatch(f"objective needs equal shapes, got {A_arr.shape} and {X_arr.shape}")
    return 0.5 * float(np.sum((X_arr - A_arr) ** 2))


def stationarity_residual(
    model: ModelSpec, A: np.ndarray, X: np.ndarray, tol: float = ON_MODEL_TOL
) -> float:
    """||tangent_project(model, X, X - A)||_F.

    Raises
    ------
    NotOnManifold
        If X is not on the model within ``tol``.
    """
    X_arr = model.check_shape(X)
    A_arr = model.check_shape(A)
    return float(np.linalg.norm(model.tangent_project(X_arr, X_arr - A_arr, tol=tol)))


def _certify(model: ModelSpec, A: np.ndarray, label: Label, X: np.ndarray) -> StationaryPoint:
    return StationaryPoint(
        label=label,
        X=X,
        objective=objective(A, X),
        grad_residual=float(np.linalg.norm(model.project_tangent(X, X - A))),
        membership=model.membership_residual(X),
    )


# ---------------------------------------------------------------------------
# Per-model constructions
# ---------------------------------------------------------------------------


def _flag_point(model: FlagSpec, sd: SpectralData, labels: Sequence[int]) -> np.ndarray:
    bs = np.asarray(model.bs)
    return isospectral.point(sd.eig.Q, bs[np.asarray(labels) - 1])


def _subset_diagonal(size: int, subset: Subset, a: float, b: float) -> np.ndarray:
    diagonal = np.full(size, b)
    if subset:
        diagonal[np.asarray(subset) - 1] = a
    return diagonal


def _grassmann_point(model: GrassmannSpec, sd: SpectralData, subset: Subset) -> np.ndarray:
    return isospectral.point(sd.eig.Q, _subset_diagonal(model.n, subset, model.a, model.b))


def _schubert_point(model: SchubertSpec, sd: SpectralData, subset: Subset) -> np.ndarray:
    diagonal = _subset_diagonal(model.inner_size, subset, model.a, model.b)
    return model.embed(isospectral.point(sd.eig.Q, diagonal))


def _stiefel_point(model: StiefelSpec, sd: SpectralData, signs: SignVector) -> np.ndarray:
    Uk = sd.svd.U[:, : model.k]
    return (Uk * np.asarray(signs, dtype=float)) @ sd.svd.V.T @ model.b_sqrt


def _labels_and_builder(
    model: ModelSpec, sd: SpectralData, cap: Optional[int]
) -> Tuple[List[Label], Callable[[Label], np.ndarray]]:
    if isinstance(model, FlagSpec):
        return (
            list(block_assignments(model.block_sizes, cap=cap)),
            lambda f: _flag_point(model, sd, f.labels),
        )
    if isinstance(model, GrassmannSpec):
        return (
            list(k_subsets(model.n, model.k, cap=cap)),
            lambda s: _grassmann_point(model, sd, s),
        )
    if isinstance(model, SchubertSpec):
        return (
            list(k_subsets(model.inner_size, model.l - model.k, cap=cap)),
            lambda s: _schubert_point(model, sd, s),
        )
    if isinstance(model, StiefelSpec):
        return (
            list(sign_vectors(model.k, cap=cap)),
            lambda e: _stiefel_point(model, sd, e),
        )
    raise TypeError(f"unsupported model type {type(model).__name__}")


def enumerate_stationary(
    model: ModelSpec,
    A: np.ndarray,
    tol: float = DEFAULT_GAP_TOL,
    cap: Optional[int] = ENUMERATION_CAP,
    spectral: Optional[SpectralData] = None,
) -> List[StationaryPoint]:
    """All stationary points of the distance to a generic anchor A.

    Parameters
    ----------
    model : ModelSpec
        Any of the four models.
    A : np.ndarray
        Anchor, n x n symmetric or n x k (Stiefel).
    tol : float
        Genericity gap tolerance.
    cap : int, optional
        Enumeration cap; None disables it.
    spectral : SpectralData, optional
        Result of a previous ``check_generic`` on the same (model, A).

    Returns
    -------
    list of StationaryPoint
        Exactly ``ed_degree(model)`` points in canonical label order.

    Raises
    ------
    DegenerateInput
        If A fails the genericity predicate.
    EnumerationOverflow
        If the count exceeds ``cap``.
    """
    A_arr = prepare_anchor(model, A)
    sd = spectral if spectral is not None else check_generic(model, A_arr, tol=tol)
    labels, build = _labels_and_builder(model, sd, cap)
    points = [_certify(model, A_arr, label, build(label)) for label in labels]
    logger.debug("Enumerated %d stationary points on the %s model", len(points), model.kind)
    return points


# ---------------------------------------------------------------------------
# Nearest point
# ---------------------------------------------------------------------------


def _check_order(model: ModelSpec) -> None:
    if isinstance(model, FlagSpec) and not model.bs_decreasing():
        raise ParameterOrderViolation(
            f"nearest point needs bs strictly decreasing, got {model.bs}"
        )
    if isinstance(model, (GrassmannSpec, SchubertSpec)) and not model.a > model.b:
        raise ParameterOrderViolation(
            f"nearest point needs a > b, got a={model.a}, b={model.b}"
        )


def nearest_label(model: ModelSpec) -> Label:
    """Label of the closed-form minimizer (after the ordering check)."""
    _check_order(model)
    if isinstance(model, FlagSpec):
        labels = tuple(j for j, s in enumerate(model.block_sizes, start=1) for _ in range(s))
        return BlockAssignment(labels=labels, block_sizes=model.block_sizes)
    if isinstance(model, GrassmannSpec):
        return tuple(range(1, model.k + 1))
    if isinstance(model, SchubertSpec):
        return tuple(range(1, model.l - model.k + 1))
    if isinstance(model, StiefelSpec):
        return SignVector((1,) * model.k)
    raise TypeError(f"unsupported model type {type(model).__name__}")


def nearest_point(
    model: ModelSpec,
    A: np.ndarray,
    tol: float = DEFAULT_GAP_TOL,
    spectral: Optional[SpectralData] = None,
) -> StationaryPoint:
    """Closed-form nearest point of the model to a generic anchor.

    Flag: decreasing eigenvalues of A meet decreasing bs. Grassmann: a on
    the top-k eigenvectors. Schubert: a on the top l - k eigenvectors of
    B33. Stiefel: all signs +1 (the polar factor of A B^{1/2}).

    Raises
    ------
    ParameterOrderViolation
        If bs are not strictly decreasing (flag) or a <= b.
    DegenerateInput
        If A is not generic.
    """
    label = nearest_label(model)
    A_arr = prepare_anchor(model, A)
    sd = spectral if spectral is not None else check_generic(model, A_arr, tol=tol)
    if isinstance(model, FlagSpec):
        X = _flag_point(model, sd, label.labels)
    elif isinstance(model, GrassmannSpec):
        X = _grassmann_point(model, sd, label)
    elif isinstance(model, SchubertSpec):
        X = _schubert_point(model, sd, label)
    else:
        X = _stiefel_point(model, sd, label)
    return _certify(model, A_arr, label, X)


# ---------------------------------------------------------------------------
# Helpers over point sets
# ---------------------------------------------------------------------------


def min_pairwise_distance(points: Sequence[Union[StationaryPoint, np.ndarray]]) -> float:
    """Smallest Frobenius distance between two points; inf for fewer than two."""
    if len(points) < 2:
        return float("inf")
    flat = np.stack(
        [np.ravel(p.X if isinstance(p, StationaryPoint) else p) for p in points]
    )
    return float(np.min(pdist(flat)))


def argmin_point(points: Sequence[StationaryPoint]) -> StationaryPoint:
    """Point of smallest objective (first in label order on ties)."""
    if not points:
        raise ValueError("argmin over an empty point list")
    return min(points, key=lambda p: p.objective)
