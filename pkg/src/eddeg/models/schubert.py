"""
Quadratic model of the Schubert variety Omega(U, W) of l-dimensional
subspaces L with U <= L <= W, dim U = k, dim W = m.

With an adapted frame Q (first k columns span U, next n - m span the
orthogonal complement of W) the model is the set of

    Q diag(a I_k, b I_{n-m}, X_in) Q^T,   X_in in Gr_{a,b}(l - k, m - k),

a copy of a Grassmannian of dimension (l - k)(m - l) inside Gr_{a,b}(l, n).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Tuple

import numpy as np
import scipy.linalg

from eddeg.config import NESTING_TOL, ORTHOGONALITY_TOL, RANK_TOL
from eddeg.errors import InvalidModel, NotNested, RankDeficient, ShapeMismatch
from eddeg.matcore.linalg import fix_column_signs, orthogonality_residual
from eddeg.matcore.sampling import random_orthogonal
from eddeg.models import isospectral
from eddeg.models.base import ModelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SchubertSpec(ModelSpec):
    """Omega_{a,b}(U, W) given through its adapted frame Q (identity by default).

    Requires 0 <= k <= l <= m <= n and a != b.
    """

    kind: ClassVar[str] = "schubert"

    n: int
    k: int
    l: int  # noqa: E741
    m: int
    a: float = 1.0
    b: float = 0.0
    Q: Optional[np.ndarray] = None
    _inner: slice = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.k <= self.l <= self.m <= self.n:
            raise InvalidModel(
                "Schubert model needs 0 <= k <= l <= m <= n, "
                f"got k={self.k}, l={self.l}, m={self.m}, n={self.n}"
            )
        if self.a == self.b:
            raise InvalidModel(f"Schubert model needs a != b, got a=b={self.a}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

        Q = np.eye(self.n) if self.Q is None else np.array(self.Q, dtype=float)
        if Q.shape != (self.n, self.n):
            raise InvalidModel(f"frame Q must be {self.n} x {self.n}, got {Q.shape}")
        resid = orthogonality_residual(Q)
        if resid > ORTHOGONALITY_TOL * self.n:
            raise InvalidModel(f"frame Q is not orthogonal (residual {resid:.3e})")
        Q.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "_inner", slice(self.k + self.n - self.m, self.n))

    # ------------------------------------------------------------------
    # Block layout
    # ------------------------------------------------------------------

    @property
    def inner_slice(self) -> slice:
        """Rows and columns of the inner block in the Q frame."""
        return self._inner

    @property
    def inner_size(self) -> int:
        return self.m - self.k

    @property
    def inner_sizes(self) -> Tuple[int, int]:
        """Multiplicities of (a, b) in the inner block."""
        return (self.l - self.k, self.m - self.l)

    @property
    def ambient_shape(self) -> tuple:
        return (self.n, self.n)

    def degree(self) -> int:
        return math.comb(self.m - self.k, self.l - self.k)

    def dimension(self) -> int:
        return (self.l - self.k) * (self.m - self.l)

    def in_frame(self, X: np.ndarray) -> np.ndarray:
        """Q^T X Q."""
        return self.Q.T @ X @ self.Q

    def embed(self, X_inner: np.ndarray) -> np.ndarray:
        core = np.zeros((self.n, self.n))
        k, fixed_b = self.k, self.n - self.m
        core[:k, :k] = self.a * np.eye(k)
        core[k : k + fixed_b, k : k + fixed_b] = self.b * np.eye(fixed_b)
        core[self._inner, self._inner] = X_inner
        X = self.Q @ core @ self.Q.T
        return 0.5 * (X + X.T)

    def extract(self, X: np.ndarray) -> np.ndarray:
        Y = self.in_frame(X)[self._inner, self._inner]
        return 0.5 * (Y + Y.T)

    # ------------------------------------------------------------------
    # Geometry
    # ------------------------------------------------------------------

    def block_residual(self, X: np.ndarray) -> float:
        """Deviation of Q^T X Q from diag(a I_k, b I_{n-m}, *)."""
        X = self.check_shape(X)
        Y = self.in_frame(X)
        k, fixed_b = self.k, self.n - self.m
        expected = np.zeros_like(Y)
        expected[:k, :k] = self.a * np.eye(k)
        expected[k : k + fixed_b, k : k + fixed_b] = self.b * np.eye(fixed_b)
        deviation = Y - expected
        deviation[self._inner, self._inner] = 0.0
        return float(np.linalg.norm(deviation)) / (1.0 + float(np.linalg.norm(X)))

    def grassmann_residual(self, X: np.ndarray) -> float:
        """Residual for the enclosing model Gr_{a,b}(l, n)."""
        X = self.check_shape(X)
        return isospectral.residual(X, (self.a, self.b), (self.l, self.n - self.l))

    def inner_residual(self, X: np.ndarray) -> float:
        return isospectral.residual(self.extract(X), (self.a, self.b), self.inner_sizes)

    def membership_residual(self, X: np.ndarray) -> float:
        X = self.check_shape(X)
        return max(self.block_residual(X), self.inner_residual(X), self.grassmann_residual(X))

    def random_point(self, seed: int) -> np.ndarray:
        V = random_orthogonal(self.inner_size, seed)
        diagonal = np.repeat(np.array([self.a, self.b]), self.inner_sizes)
        return self.embed(isospectral.point(V, diagonal))

    def project_tangent(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        Zs = 0.5 * (Z + Z.T)
        Z_inner = self.in_frame(Zs)[self._inner, self._inner]
        T_inner = isospectral.project_tangent(
            self.extract(X), Z_inner, (self.a, self.b), self.inner_sizes
        )
        core = np.zeros((self.n, self.n))
        core[self._inner, self._inner] = T_inner
        T = self.Q @ core @ self.Q.T
        return 0.5 * (T + T.T)

    def retract(self, Y: np.ndarray) -> np.ndarray:
        Y = self.check_shape(Y)
        inner = isospectral.retract(self.extract(Y), (self.a, self.b), self.inner_sizes)
        return self.embed(inner)

    def describe(self) -> dict:
        return {
            "model": self.kind,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "m": self.m,
            "a": self.a,
            "b": self.b,
            "Q": self.Q.tolist(),
        }


def schubert_embed(spec: SchubertSpec, X_inner: np.ndarray) -> np.ndarray:
    """Q diag(a I_k, b I_{n-m}, X_inner) Q^T.

    Raises
    ------
    ShapeMismatch
        If X_inner is not (m - k) x (m - k).
    """
    arr = np.asarray(X_inner, dtype=float)
    size = spec.inner_size
    if arr.shape != (size, size):
        raise ShapeMismatch(f"inner block must be {size} x {size}, got {arr.shape}")
    return spec.embed(arr)


def extract_inner(spec: SchubertSpec, X: np.ndarray) -> np.ndarray:
    """The (3, 3) block of Q^T X Q, inverse of ``schubert_embed`` on the model."""
    return spec.extract(spec.check_shape(X))


# ---------------------------------------------------------------------------
# Adapted frames
# ---------------------------------------------------------------------------


def _orthonormal_columns(M: np.ndarray, name: str) -> np.ndarray:
    n, r = M.shape
    if r == 0:
        return np.zeros((n, 0))
    s = scipy.linalg.svdvals(M)
    if s[-1] <= RANK_TOL * max(s[0], 1.0):
        raise RankDeficient(
            f"{name} basis is rank deficient (singular values {s[0]:.3e} .. {s[-1]:.3e})"
        )
    Qm, R = scipy.linalg.qr(M, mode="economic")
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Qm * d


def _complement(basis: np.ndarray, size: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(basis) in R^size."""
    if basis.shape[1] == 0:
        return np.eye(size)
    if basis.shape[1] == size:
        return np.zeros((size, 0))
    return scipy.linalg.null_space(basis.T)


def adapted_frame(U_basis: np.ndarray, W_basis: np.ndarray) -> np.ndarray:
    """Orthogonal Q adapted to a nested pair U <= W.

    Columns 1..k span U, the next n - m span W-perp, the remaining m - k
    span W intersected with U-perp. Each column's first nonzero entry is
    positive.

    Raises
    ------
    RankDeficient
        If either basis lacks full column rank.
    NotNested
        If U is not contained in W (tolerance 1e-8).
    """
    U_arr = np.asarray(U_basis, dtype=float)
    W_arr = np.asarray(W_basis, dtype=float)
    if U_arr.ndim == 1:
        U_arr = U_arr.reshape(-1, 1)
    if W_arr.ndim == 1:
        W_arr = W_arr.reshape(-1, 1)
    n = W_arr.shape[0]
    if U_arr.shape[0] != n:
        raise InvalidModel(f"bases live in different spaces: {U_arr.shape} vs {W_arr.shape}")

    Uo = _orthonormal_columns(U_arr, "U")
    Wo = _orthonormal_columns(W_arr, "W")
    k, m = Uo.shape[1], Wo.shape[1]
    if k > m:
        raise NotNested(f"dim U = {k} exceeds dim W = {m}")

    outside = float(np.linalg.norm(Uo - Wo @ (Wo.T @ Uo)))
    if outside > NESTING_TOL * max(1.0, np.sqrt(k)):
        raise NotNested(f"U is not contained in W (distance {outside:.3e})")

    W_perp = _complement(Wo, n)
    middle = Wo @ _complement(Wo.T @ Uo, m)
    Q = np.hstack([Uo, W_perp, middle])
    logger.debug("Adapted frame built for k=%d, m=%d, n=%d", k, m, n)
    return fix_column_signs(Q)
