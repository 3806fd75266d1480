"""
Descent-based oracle that rediscovers stationary points without the
closed-form enumeration.

Usage:
    from eddeg.empiric import multistart, match_points

    found = multistart(model, A, n_starts=240, seed=7)
    report = match_points(found.representatives, points, anchor_norm=np.linalg.norm(A))
"""

from eddeg.empiric.descent import DescentParams, DescentResult, riemannian_descent
from eddeg.empiric.matching import MatchedPair, MatchReport, match_points
from eddeg.empiric.multistart import (
    MultistartResult,
    chebyshev_series,
    multistart,
    spectral_reweight,
)

__all__ = [
    "DescentParams",
    "DescentResult",
    "MatchReport",
    "MatchedPair",
    "MultistartResult",
    "chebyshev_series",
    "match_points",
    "multistart",
    "riemannian_descent",
    "spectral_reweight",
]
