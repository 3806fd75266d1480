"""
Dense real linear algebra used by every model.

Sorted symmetric eigendecompositions, full SVDs and square roots of
positive definite matrices, all with a deterministic sign convention: the
first nonzero entry of every eigenvector / singular vector is positive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from eddeg.config import DEFAULT_GAP_TOL, SYMMETRY_TOL
from eddeg.errors import (
    DecompositionFailure,
    DegenerateSpectrum,
    InvalidModel,
    NotSymmetric,
    ShapeMismatch,
)

logger = logging.getLogger(__name__)

# Entries below this magnitude are skipped when fixing signs
_SIGN_EPS = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# Matrix records
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real symmetric matrix, stored canonically symmetrized."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_array(cls, a: "ArrayLike", tol: float = SYMMETRY_TOL) -> "SymmetricMatrix":
        """Validate squareness and symmetry, then store (a + a^T) / 2.

        Raises
        ------
        ShapeMismatch
            If ``a`` is not a square 2-D array.
        NotSymmetric
            If the asymmetry exceeds ``tol * (1 + max|a|)``.
        """
        arr = np.asarray(a, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeMismatch(f"expected a non-empty square matrix, got {arr.shape}")
        asym = float(np.max(np.abs(arr - arr.T)))
        scale = 1.0 + float(np.max(np.abs(arr)))
        if asym > tol * scale:
            raise NotSymmetric(
                f"matrix is not symmetric (max |a_ij - a_ji| = {asym:.3e})"
            )
        return cls(_frozen(0.5 * (arr + arr.T)))

    @classmethod
    def symmetric_part(cls, a: "ArrayLike") -> "SymmetricMatrix":
        """Return (a + a^T) / 2 without checking the asymmetry."""
        arr = np.asarray(a, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeMismatch(f"expected a non-empty square matrix, got {arr.shape}")
        return cls(_frozen(0.5 * (arr + arr.T)))


@dataclass(frozen=True, eq=False)
class RectMatrix:
    """Dense real n x k matrix with k <= n."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def k(self) -> int:
        return int(self.entries.shape[1])

    @classmethod
    def from_array(cls, a: "ArrayLike") -> "RectMatrix":
        arr = np.asarray(a, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[1] == 0 or arr.shape[1] > arr.shape[0]:
            raise ShapeMismatch(f"expected an n x k matrix with 1 <= k <= n, got {arr.shape}")
        return cls(_frozen(arr))


ArrayLike = Union[np.ndarray, SymmetricMatrix, RectMatrix, list]


def as_array(a: ArrayLike) -> np.ndarray:
    """Unwrap matrix records; pass plain arrays through as float arrays."""
    if isinstance(a, (SymmetricMatrix, RectMatrix)):
        return a.entries
    return np.asarray(a, dtype=float)


@dataclass(frozen=True, eq=False)
class EigenPair:
    """Eigenvalues sorted decreasing, with the matching orthogonal basis."""

    Q: np.ndarray
    lambdas: np.ndarray
    gap: float


@dataclass(frozen=True, eq=False)
class SvdData:
    """Full SVD A = U [diag(sigmas); 0] V^T with U square."""

    U: np.ndarray
    V: np.ndarray
    sigmas: np.ndarray


# ---------------------------------------------------------------------------
# Sign convention
# ---------------------------------------------------------------------------


def first_nonzero_signs(M: np.ndarray) -> np.ndarray:
    """Sign (+1/-1) of the first entry of each column above the noise floor."""
    if M.size == 0:
        return np.ones(M.shape[1] if M.ndim == 2 else 0)
    mags = np.abs(M)
    floor = _SIGN_EPS * np.maximum(mags.max(axis=0), 1e-300)
    idx = np.argmax(mags > floor, axis=0)
    signs = np.sign(M[idx, np.arange(M.shape[1])])
    signs[signs == 0] = 1.0
    return signs


def fix_column_signs(M: np.ndarray) -> np.ndarray:
    return M * first_nonzero_signs(M)


# ---------------------------------------------------------------------------
# Factorizations
# ---------------------------------------------------------------------------


def _sorted_gap(lambdas: np.ndarray) -> float:
    if lambdas.size < 2:
        return float("inf")
    return float(np.min(lambdas[:-1] - lambdas[1:]))


def eigh_descending(S: ArrayLike) -> EigenPair:
    """Eigendecomposition sorted decreasing, repeated eigenvalues allowed."""
    arr = as_array(S)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got {arr.shape}")
    if arr.shape[0] == 0:
        return EigenPair(Q=np.zeros((0, 0)), lambdas=np.zeros(0), gap=float("inf"))
    sym = 0.5 * (arr + arr.T)
    try:
        w, V = scipy.linalg.eigh(sym)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise DecompositionFailure(f"symmetric eigendecomposition failed: {e}") from e
    w = w[::-1]
    V = fix_column_signs(V[:, ::-1])
    return EigenPair(Q=V, lambdas=w, gap=_sorted_gap(w))


def sym_eig(S: ArrayLike, gap_tol: float = DEFAULT_GAP_TOL) -> EigenPair:
    """Sorted eigendecomposition of a symmetric matrix with distinct eigenvalues.

    Parameters
    ----------
    S : array-like or SymmetricMatrix
        Symmetric input.
    gap_tol : float
        Relative separation required between consecutive eigenvalues.

    Returns
    -------
    EigenPair
        ``lambdas`` strictly decreasing, ``Q`` orthogonal.

    Raises
    ------
    DegenerateSpectrum
        If the smallest gap is below ``gap_tol * (1 + ||S||_F)``.
    """
    if gap_tol < 0:
        raise ValueError("gap_tol must be nonnegative")
    sym = S if isinstance(S, SymmetricMatrix) else SymmetricMatrix.from_array(S)
    pair = eigh_descending(sym)
    threshold = gap_tol * (1.0 + float(np.linalg.norm(sym.entries)))
    if pair.gap < threshold:
        raise DegenerateSpectrum(
            f"repeated eigenvalues: smallest gap {pair.gap:.3e} < {threshold:.3e}",
            gap=pair.gap,
        )
    return pair


def full_svd(A: ArrayLike) -> SvdData:
    """Full SVD of an n x k matrix (n >= k): U is n x n, V is k x k.

    Signs: the first nonzero entry of each of the first k columns of U is
    positive (the matching column of V flips with it); the complement
    columns of U follow the same rule on their own.
    """
    arr = as_array(A)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] > arr.shape[0]:
        raise ShapeMismatch(f"full_svd needs n >= k, got shape {arr.shape}")
    k = arr.shape[1]
    try:
        U, s, Vh = scipy.linalg.svd(arr, full_matrices=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise DecompositionFailure(f"SVD failed: {e}") from e
    V = Vh.T
    signs = first_nonzero_signs(U)
    U = U * signs
    V = V * signs[:k]
    return SvdData(U=U, V=V, sigmas=s)


def spd_eig(B: ArrayLike) -> EigenPair:
    """Decreasing eigendecomposition of a positive definite matrix.

    Raises
    ------
    InvalidModel
        If the smallest eigenvalue is not positive.
    """
    pair = eigh_descending(SymmetricMatrix.from_array(B))
    if pair.lambdas[-1] <= 0.0:
        raise InvalidModel(
            f"matrix is not positive definite (min eigenvalue {pair.lambdas[-1]:.3e})"
        )
    return pair


def spd_sqrt(B: ArrayLike) -> np.ndarray:
    """Symmetric square root of a positive definite matrix."""
    pair = spd_eig(B)
    return (pair.Q * np.sqrt(pair.lambdas)) @ pair.Q.T


def spd_inv_sqrt(B: ArrayLike) -> np.ndarray:
    """Inverse of the symmetric square root of a positive definite matrix."""
    pair = spd_eig(B)
    return (pair.Q / np.sqrt(pair.lambdas)) @ pair.Q.T


def orthogonality_residual(Q: np.ndarray) -> float:
    """||Q^T Q - I||_F."""
    return float(np.linalg.norm(Q.T @ Q - np.eye(Q.shape[1])))
