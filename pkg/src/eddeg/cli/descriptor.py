"""
Wire formats: model descriptors and the JSON matrix file
{"rows": n, "cols": k, "data": [row-major numbers]}.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, List, Literal, Optional, Union

import numpy as np
from pydantic import (
    BaseModel,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from eddeg.errors import InvalidModel, MalformedFile, NotSymmetric, ShapeMismatch
from eddeg.models import FlagSpec, GrassmannSpec, ModelSpec, SchubertSpec, StiefelSpec

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Matrix files
# ---------------------------------------------------------------------------


class MatrixFile(BaseModel):
    """Dense matrix in row-major order."""

    rows: PositiveInt = Field(..., description="Number of rows")
    cols: PositiveInt = Field(..., description="Number of columns")
    data: List[float] = Field(..., description="Row-major entries")

    @model_validator(mode="after")
    def _size(self) -> "MatrixFile":
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"data has {len(self.data)} entries, expected rows * cols = {self.rows * self.cols}"
            )
        return self

    def to_array(self) -> np.ndarray:
        return np.asarray(self.data, dtype=float).reshape(self.rows, self.cols)

    @classmethod
    def from_array(cls, X: np.ndarray) -> "MatrixFile":
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        return cls(rows=arr.shape[0], cols=arr.shape[1], data=arr.ravel().tolist())


def read_matrix(path: Union[str, Path]) -> np.ndarray:
    """Load a matrix file.

    Raises
    ------
    MalformedFile
        If the file is missing, not JSON, or violates the schema.
    """
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            payload = json.load(f)
        return MatrixFile.model_validate(payload).to_array()
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise MalformedFile(f"cannot read matrix file {path}: {e}") from e


def load_anchor(path: Union[str, Path], model: ModelSpec) -> np.ndarray:
    """Read an anchor and fit it to the model.

    Square anchors for symmetric models are replaced by their symmetric
    part; the distance function changes only by a constant.
    """
    A = read_matrix(path)
    if model.is_symmetric and A.shape == model.ambient_shape:
        asym = float(np.max(np.abs(A - A.T)))
        if asym > 1e-12 * (1.0 + float(np.max(np.abs(A)))):
            logger.warning(
                "Anchor %s is not symmetric (max asymmetry %.3e); using its symmetric part",
                path,
                asym,
            )
        A = 0.5 * (A + A.T)
    try:
        return model.check_shape(A)
    except (ShapeMismatch, NotSymmetric) as e:
        raise ShapeMismatch(f"anchor {path}: {e}") from e


# ---------------------------------------------------------------------------
# Model descriptors
# ---------------------------------------------------------------------------


def _split_numbers(value: Any) -> Any:
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",") if p.strip()]
        return parts
    return value


class ModelDescriptor(BaseModel):
    """Model description as given on the command line or in a report."""

    model: Literal["flag", "grassmann", "stiefel", "schubert"]
    n: PositiveInt
    k: Optional[NonNegativeInt] = None
    ks: Optional[List[PositiveInt]] = None
    l: Optional[NonNegativeInt] = None  # noqa: E741
    m: Optional[NonNegativeInt] = None
    bs: Optional[List[float]] = None
    a: Optional[float] = None
    b: Optional[float] = None
    B: Optional[List[List[float]]] = None
    Q: Optional[List[List[float]]] = None

    @field_validator("ks", "bs", mode="before")
    @classmethod
    def _parse_lists(cls, v: Any) -> Any:
        return _split_numbers(v)

    def _require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name}" for name in missing)
            raise InvalidModel(f"{self.model} model requires {flags}")

    def to_handle(self) -> ModelSpec:
        """Build and validate the model.

        Raises
        ------
        InvalidModel
            If required fields are missing or parameters are invalid.
        """
        ab = {
            key: value
            for key, value in (("a", self.a), ("b", self.b))
            if value is not None
        }
        if self.model == "flag":
            self._require("ks")
            bs = tuple(self.bs) if self.bs is not None else None
            return FlagSpec(n=self.n, ks=tuple(self.ks), bs=bs)
        if self.model == "grassmann":
            self._require("k")
            return GrassmannSpec(n=self.n, k=self.k, **ab)
        if self.model == "stiefel":
            self._require("k")
            B = np.asarray(self.B, dtype=float) if self.B is not None else None
            return StiefelSpec(n=self.n, k=self.k, B=B)
        self._require("k", "l", "m")
        Q = np.asarray(self.Q, dtype=float) if self.Q is not None else None
        return SchubertSpec(n=self.n, k=self.k, l=self.l, m=self.m, Q=Q, **ab)

    def echo(self) -> dict:
        """Descriptor as echoed into reports (unset fields omitted)."""
        return self.model_dump(exclude_none=True)
