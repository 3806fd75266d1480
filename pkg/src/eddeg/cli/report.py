"""
Report schemas and deterministic writers.

JSON payloads are rendered by a small encoder so that identical runs give
byte-identical files: floats with 17 significant digits, non-finite values
as null, insertion-ordered keys, two-space indent, flat numeric lists kept
on one line.
"""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from eddeg.empiric.matching import MatchReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------


class OracleSummary(BaseModel):
    """Multistart bookkeeping plus the match against the enumeration."""

    n_starts: int = Field(..., ge=1)
    n_converged: int = Field(..., ge=0)
    n_dropped: int = Field(..., ge=0)
    n_rejected: int = Field(..., ge=0)
    match: MatchReport


class TrialRecord(BaseModel):
    """One certification trial on one anchor."""

    trial_seed: int
    degree_formula: int = Field(..., ge=0)
    count_enumerated: int = Field(..., ge=0)
    max_membership_residual: float
    max_stationarity_residual: float
    min_pairwise_distance: float
    nearest_label: Optional[str] = None
    oracle: Optional[OracleSummary] = None
    passed: bool
    failures: List[str] = Field(default_factory=list)
    resample_attempts: int = Field(0, ge=0)


class CertifyReport(BaseModel):
    """Full certification run; ``pass`` holds iff every trial passed."""

    model_config = ConfigDict(populate_by_name=True, protected_namespaces=())

    model_descriptor: Dict[str, Any]
    anchor_source: Literal["seeded", "file"]
    trials: List[TrialRecord] = Field(default_factory=list)
    passed: bool = Field(..., alias="pass")
    tool_version: str
    tolerances: Dict[str, float]

    def to_payload(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    return FLOAT_FORMAT % value


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, float, str, np.generic))


def _encode(obj: Any, level: int, indent: int) -> str:
    if isinstance(obj, BaseModel):
        obj = obj.model_dump(by_alias=True)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)

    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key), ensure_ascii=False)}: {_encode(value, level + 1, indent)}"
            for key, value in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(_is_scalar(v) for v in obj):
            return "[" + ", ".join(_encode(v, level + 1, indent) for v in obj) + "]"
        items = [pad + _encode(v, level + 1, indent) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def dumps_json(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text for reports and point lists."""
    return _encode(obj, 0, indent)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def trials_frame(report: CertifyReport) -> pd.DataFrame:
    """One row per trial; oracle fields flattened with an ``oracle_`` prefix."""
    rows = []
    for trial in report.trials:
        row: Dict[str, Any] = {
            "trial_seed": trial.trial_seed,
            "degree_formula": trial.degree_formula,
            "count_enumerated": trial.count_enumerated,
            "max_membership_residual": trial.max_membership_residual,
            "max_stationarity_residual": trial.max_stationarity_residual,
            "min_pairwise_distance": trial.min_pairwise_distance,
            "nearest_label": trial.nearest_label,
            "passed": trial.passed,
            "failures": ";".join(trial.failures),
            "resample_attempts": trial.resample_attempts,
        }
        if trial.oracle is not None:
            match = trial.oracle.match
            row.update(
                oracle_n_starts=trial.oracle.n_starts,
                oracle_n_converged=trial.oracle.n_converged,
                oracle_n_found_clusters=match.n_found_clusters,
                oracle_max_match_distance=match.max_match_distance,
                oracle_unmatched=len(match.unmatched_clusters),
                oracle_missing=len(match.missing_labels),
            )
        rows.append(row)
    return pd.DataFrame(rows)


def points_frame(records: List[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "label": r["label"],
                "objective": r["objective"],
                "grad_residual": r["grad_residual"],
            }
            for r in records
        ]
    )


def dumps_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def write_text_atomic(path: Union[str, Path], text: str) -> None:
    """Write via a temp file in the destination directory, then os.replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(dir=str(path.parent), delete=False) as tf:
        tmp_path = Path(tf.name)
        tf.write(text.encode("utf-8"))
        tf.flush()
        os.fsync(tf.fileno())
    os.replace(str(tmp_path), str(path))
    logger.info("Wrote %s", path)
