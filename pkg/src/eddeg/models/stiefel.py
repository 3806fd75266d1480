"""
Cholesky model of the Stiefel manifold: V_B(k, n) = {X in R^{n x k} : X^T X = B}
for a fixed positive definite k x k matrix B.

Every X on the model factors as X = Y B^{1/2} with Y an orthonormal
n x k frame; sampling and retraction go through that factorization.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import ClassVar, Optional

import numpy as np
import scipy.linalg

from eddeg.errors import InvalidModel, NotSymmetric, ShapeMismatch
from eddeg.matcore.linalg import EigenPair, SymmetricMatrix, spd_eig
from eddeg.matcore.sampling import random_orthogonal
from eddeg.models.base import ModelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StiefelSpec(ModelSpec):
    """V_B(k, n) with 1 <= k <= n; B defaults to the identity."""

    kind: ClassVar[str] = "stiefel"

    n: int
    k: int
    B: Optional[np.ndarray] = None
    b_eig: EigenPair = field(init=False, repr=False)
    b_sqrt: np.ndarray = field(init=False, repr=False)
    b_inv_sqrt: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise InvalidModel(f"Stiefel model needs 1 <= k <= n, got k={self.k}, n={self.n}")
        raw = np.eye(self.k) if self.B is None else np.asarray(self.B, dtype=float)
        if raw.shape != (self.k, self.k):
            raise InvalidModel(f"B must be {self.k} x {self.k}, got {raw.shape}")
        try:
            B = SymmetricMatrix.from_array(raw).entries
        except (NotSymmetric, ShapeMismatch) as e:
            raise InvalidModel(f"B must be symmetric: {e}") from e
        pair = spd_eig(B)
        root = np.sqrt(pair.lambdas)
        sqrt = (pair.Q * root) @ pair.Q.T
        inv_sqrt = (pair.Q / root) @ pair.Q.T
        for name, value in (
            ("B", B),
            ("b_eig", pair),
            ("b_sqrt", 0.5 * (sqrt + sqrt.T)),
            ("b_inv_sqrt", 0.5 * (inv_sqrt + inv_sqrt.T)),
        ):
            object.__setattr__(self, name, value)

    @property
    def ambient_shape(self) -> tuple:
        return (self.n, self.k)

    @property
    def is_symmetric(self) -> bool:
        return False

    def degree(self) -> int:
        return 2**self.k

    def dimension(self) -> int:
        return self.n * self.k - self.k * (self.k + 1) // 2

    def membership_residual(self, X: np.ndarray) -> float:
        X = self.check_shape(X)
        scale = 1.0 + float(np.linalg.norm(X))
        return float(np.linalg.norm(X.T @ X - self.B)) / scale**2

    def random_point(self, seed: int) -> np.ndarray:
        Y = random_orthogonal(self.n, seed)[:, : self.k]
        return Y @ self.b_sqrt

    def project_tangent(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        """Z - X S with B S + S B = X^T Z + Z^T X, solved in the eigenbasis of B."""
        W = self.b_eig.Q
        beta = self.b_eig.lambdas
        M = X.T @ Z + Z.T @ X
        S = W @ ((W.T @ M @ W) / (beta[:, None] + beta[None, :])) @ W.T
        return Z - X @ (0.5 * (S + S.T))

    def retract(self, Y: np.ndarray) -> np.ndarray:
        """Thin QR (positive diagonal) of Y B^{-1/2}, mapped back by B^{1/2}."""
        Y = self.check_shape(Y)
        Qf, R = scipy.linalg.qr(Y @ self.b_inv_sqrt, mode="economic")
        d = np.sign(np.diag(R))
        d[d == 0] = 1.0
        return (Qf * d) @ self.b_sqrt

    def describe(self) -> dict:
        return {"model": self.kind, "n": self.n, "k": self.k, "B": self.B.tolist()}
