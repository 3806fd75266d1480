"""Match oracle clusters against enumerated stationary points."""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from eddeg.config import MATCH_TOL
from eddeg.stationary.points import StationaryPoint

logger = logging.getLogger(__name__)


class MatchedPair(BaseModel):
    cluster: int = Field(..., description="Index of the oracle cluster")
    label: str = Field(..., description="Canonical label of the enumerated point")
    distance: float = Field(..., description="Frobenius distance between the two")


class MatchReport(BaseModel):
    """Outcome of pairing oracle clusters with the enumerated set."""

    n_found_clusters: int = Field(..., ge=0)
    n_expected: int = Field(..., ge=0)
    matched_labels: List[MatchedPair] = Field(default_factory=list)
    max_match_distance: float = Field(
        0.0, description="Largest distance among matched pairs (0 when none)"
    )
    unmatched_clusters: List[int] = Field(
        default_factory=list, description="Clusters with no enumerated partner"
    )
    missing_labels: List[str] = Field(
        default_factory=list, description="Enumerated labels no cluster reached"
    )

    @model_validator(mode="after")
    def _partition(self) -> "MatchReport":
        if len(self.matched_labels) + len(self.unmatched_clusters) != self.n_found_clusters:
            raise ValueError("matched + unmatched must equal n_found_clusters")
        return self

    @property
    def complete(self) -> bool:
        """Every enumerated point matched and every cluster explained."""
        return not self.missing_labels and not self.unmatched_clusters


def match_points(
    found: Sequence[np.ndarray],
    enumerated: Sequence[StationaryPoint],
    tol: float = MATCH_TOL,
    anchor_norm: float = 0.0,
) -> MatchReport:
    """Greedy nearest-pair matching under the Frobenius distance.

    Pairs are taken in increasing distance; a pair matches when both sides
    are still free and the distance is at most ``tol * (1 + anchor_norm)``.
    """
    threshold = tol * (1.0 + anchor_norm)
    candidates: List[Tuple[float, int, int]] = []
    for i, X in enumerate(found):
        for j, point in enumerate(enumerated):
            candidates.append((float(np.linalg.norm(np.asarray(X) - point.X)), i, j))
    candidates.sort()

    used_found: set = set()
    used_enum: set = set()
    pairs: List[MatchedPair] = []
    for distance, i, j in candidates:
        if distance > threshold:
            break
        if i in used_found or j in used_enum:
            continue
        used_found.add(i)
        used_enum.add(j)
        pairs.append(MatchedPair(cluster=i, label=enumerated[j].label_text, distance=distance))

    pairs.sort(key=lambda p: p.cluster)
    report = MatchReport(
        n_found_clusters=len(found),
        n_expected=len(enumerated),
        matched_labels=pairs,
        max_match_distance=max((p.distance for p in pairs), default=0.0),
        unmatched_clusters=[i for i in range(len(found)) if i not in used_found],
        missing_labels=[
            p.label_text for j, p in enumerate(enumerated) if j not in used_enum
        ],
    )
    logger.debug(
        "Matched %d/%d clusters to %d enumerated points",
        len(pairs),
        len(found),
        len(enumerated),
    )
    return report
