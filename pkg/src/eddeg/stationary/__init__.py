"""
Closed-form stationary points, certification and nearest points.

Usage:
    from eddeg.stationary import enumerate_stationary, nearest_point

    points = enumerate_stationary(model, A)
    best = nearest_point(model, A)
    assert best.label == min(points, key=lambda p: p.objective).label
"""

from eddeg.stationary.points import (
    Label,
    StationaryPoint,
    argmin_point,
    enumerate_stationary,
    label_text,
    min_pairwise_distance,
    nearest_label,
    nearest_point,
    objective,
    stationarity_residual,
)
from eddeg.stationary.spectral import (
    PREDICATE_DISTINCT_C_VALUES,
    PREDICATE_DISTINCT_EIGENVALUES,
    PREDICATE_DISTINCT_INNER_EIGENVALUES,
    PREDICATE_POSITIVE_SINGULAR_VALUES,
    SpectralData,
    check_generic,
    prepare_anchor,
)

__all__ = [
    "Label",
    "PREDICATE_DISTINCT_C_VALUES",
    "PREDICATE_DISTINCT_EIGENVALUES",
    "PREDICATE_DISTINCT_INNER_EIGENVALUES",
    "PREDICATE_POSITIVE_SINGULAR_VALUES",
    "SpectralData",
    "StationaryPoint",
    "argmin_point",
    "check_generic",
    "enumerate_stationary",
    "label_text",
    "min_pairwise_distance",
    "nearest_label",
    "nearest_point",
    "objective",
    "prepare_anchor",
    "stationarity_residual",
]
