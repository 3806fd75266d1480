"""Common interface of the four matrix models."""

from __future__ import annotations

import abc
from typing import ClassVar, Optional

import numpy as np

from eddeg.config import ENUMERATION_CAP, ON_MODEL_TOL
from eddeg.errors import NotOnManifold, ShapeMismatch
from eddeg.matcore.combinatorics import check_cap


class ModelSpec(abc.ABC):
    """A validated matrix model of a manifold or variety.

    Subclasses are frozen dataclasses; ``kind`` tags them for the wire
    format and reports.
    """

    kind: ClassVar[str]

    # ------------------------------------------------------------------
    # Formulas
    # ------------------------------------------------------------------

    @abc.abstractmethod
    def degree(self) -> int:
        """Euclidean distance degree, exact."""

    @abc.abstractmethod
    def dimension(self) -> int:
        """Real dimension of the model."""

    def ed_degree(self, cap: Optional[int] = ENUMERATION_CAP) -> int:
        value = self.degree()
        check_cap(value, cap, f"ED degree of {self.kind} model")
        return value

    # ------------------------------------------------------------------
    # Geometry
    # ------------------------------------------------------------------

    @property
    @abc.abstractmethod
    def ambient_shape(self) -> tuple:
        """Shape of the matrices the model lives in."""

    @property
    def is_symmetric(self) -> bool:
        """Whether the ambient space is the symmetric n x n matrices."""
        return True

    @abc.abstractmethod
    def membership_residual(self, X: np.ndarray) -> float:
        """Normalized residual of the defining equations at X (0 on the model)."""

    @abc.abstractmethod
    def random_point(self, seed: int) -> np.ndarray:
        """Seeded point on the model."""

    @abc.abstractmethod
    def project_tangent(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        """Orthogonal projection of Z onto the tangent space at X, unchecked."""

    @abc.abstractmethod
    def retract(self, Y: np.ndarray) -> np.ndarray:
        """Map an ambient matrix near the model back onto it."""

    def tangent_project(
        self, X: np.ndarray, Z: np.ndarray, tol: float = ON_MODEL_TOL
    ) -> np.ndarray:
        """Tangent projection after checking that X lies on the model.

        Raises
        ------
        NotOnManifold
            If ``membership_residual(X)`` exceeds ``tol``.
        """
        X = self.check_shape(X)
        Z = self.check_shape(Z)
        residual = self.membership_residual(X)
        if residual > tol:
            raise NotOnManifold(
                f"point is off the {self.kind} model (residual {residual:.3e} > {tol:.1e})",
                residual=residual,
            )
        return self.project_tangent(X, Z)

    def check_shape(self, X: np.ndarray) -> np.ndarray:
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 1 and len(self.ambient_shape) == 2 and self.ambient_shape[1] == 1:
            arr = arr.reshape(-1, 1)
        if arr.shape != self.ambient_shape:
            raise ShapeMismatch(
                f"{self.kind} model expects shape {self.ambient_shape}, got {arr.shape}"
            )
        return arr

    def describe(self) -> dict:
        """Plain-data description of the parameters."""
        return {"model": self.kind}
