"""
Flag, Grassmann, Stiefel and Schubert matrix models.

Usage:
    from eddeg.models import FlagSpec, ed_degree, dimension

    model = FlagSpec(n=4, ks=(1, 2))
    ed_degree(model)    # 12
    dimension(model)    # 5
"""

from typing import Optional, Union

import numpy as np

from eddeg.config import ENUMERATION_CAP, ON_MODEL_TOL
from eddeg.models.base import ModelSpec
from eddeg.models.flag import FlagSpec, GrassmannSpec
from eddeg.models.schubert import SchubertSpec, adapted_frame, extract_inner, schubert_embed
from eddeg.models.stiefel import StiefelSpec

ModelHandle = Union[FlagSpec, GrassmannSpec, StiefelSpec, SchubertSpec]

MODEL_KINDS = {
    FlagSpec.kind: FlagSpec,
    GrassmannSpec.kind: GrassmannSpec,
    StiefelSpec.kind: StiefelSpec,
    SchubertSpec.kind: SchubertSpec,
}


def ed_degree(model: ModelSpec, cap: Optional[int] = ENUMERATION_CAP) -> int:
    """ED degree of the model; independent of bs, (a, b), B and Q."""
    return model.ed_degree(cap=cap)


def dimension(model: ModelSpec) -> int:
    return model.dimension()


def membership_residual(model: ModelSpec, X: np.ndarray) -> float:
    return model.membership_residual(X)


def random_point(model: ModelSpec, seed: int) -> np.ndarray:
    return model.random_point(seed)


def tangent_project(
    model: ModelSpec, X: np.ndarray, Z: np.ndarray, tol: float = ON_MODEL_TOL
) -> np.ndarray:
    return model.tangent_project(X, Z, tol=tol)


def retract(model: ModelSpec, Y: np.ndarray) -> np.ndarray:
    return model.retract(Y)


__all__ = [
    "FlagSpec",
    "GrassmannSpec",
    "MODEL_KINDS",
    "ModelHandle",
    "ModelSpec",
    "SchubertSpec",
    "StiefelSpec",
    "adapted_frame",
    "dimension",
    "ed_degree",
    "extract_inner",
    "membership_residual",
    "random_point",
    "retract",
    "schubert_embed",
    "tangent_project",
]
