"""
Certification workflow behind ``eddeg certify``.

Each trial draws (or reads) an anchor, enumerates the stationary points,
and checks them against the degree formula and the residual ladder; the
nearest point is cross-checked against the enumeration's argmin and the
descent oracle optionally rediscovers the stationary set independently.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from eddeg import __version__
from eddeg.cli.report import CertifyReport, OracleSummary, TrialRecord
from eddeg.config import DEFAULT_SEED, Settings
from eddeg.empiric import match_points, multistart
from eddeg.errors import DegenerateInput, ParameterOrderViolation
from eddeg.matcore.sampling import derive_seed, random_rect, random_symmetric
from eddeg.models.base import ModelSpec
from eddeg.stationary import (
    SpectralData,
    argmin_point,
    check_generic,
    enumerate_stationary,
    min_pairwise_distance,
    nearest_point,
    prepare_anchor,
)

logger = logging.getLogger(__name__)

# Child-seed key separating the oracle stream from anchor resampling
_ORACLE_KEY = 1 << 20


@dataclass
class CertifyOptions:
    trials: int = 1
    seed: int = DEFAULT_SEED
    oracle: bool = False
    starts: Optional[int] = None
    settings: Settings = field(default_factory=Settings)
    progress: bool = False


def sample_anchor(model: ModelSpec, seed: int) -> np.ndarray:
    """Seeded Gaussian anchor: symmetric n x n, or n x k for Stiefel."""
    if model.is_symmetric:
        return np.array(random_symmetric(model.ambient_shape[0], seed).entries)
    n, k = model.ambient_shape
    return np.array(random_rect(n, k, seed).entries)


def draw_generic_anchor(
    model: ModelSpec, base_seed: int, attempts: int, tol: float
) -> Tuple[np.ndarray, SpectralData, int]:
    """Sample until the anchor passes the genericity predicate.

    Attempt 0 uses ``base_seed``; attempt j >= 1 uses
    ``derive_seed(base_seed, j)``.

    Returns
    -------
    (A, spectral, resamples)

    Raises
    ------
    DegenerateInput
        If all ``attempts`` resamples are degenerate as well.
    """
    last: Optional[DegenerateInput] = None
    for attempt in range(attempts + 1):
        seed = base_seed if attempt == 0 else derive_seed(base_seed, attempt)
        A = sample_anchor(model, seed)
        try:
            return A, check_generic(model, A, tol=tol), attempt
        except DegenerateInput as e:
            last = e
            logger.warning("Anchor from seed %d is degenerate (%s); resampling", seed, e.predicate)
    assert last is not None
    raise DegenerateInput(
        f"anchor still degenerate after {attempts} resamples: {last}",
        predicate=last.predicate,
    ) from last


def _run_oracle(
    model: ModelSpec,
    A: np.ndarray,
    points: list,
    degree: int,
    trial_seed: int,
    options: CertifyOptions,
) -> OracleSummary:
    settings = options.settings
    n_starts = options.starts or settings.starts_per_degree * max(degree, 1)
    found = multistart(
        model,
        A,
        n_starts,
        derive_seed(trial_seed, _ORACLE_KEY),
        settings.descent,
        reweight_degree=settings.reweight_degree,
        cluster_tol=settings.tolerances.cluster,
        certify_tol=settings.tolerances.oracle_certify,
        progress=options.progress,
    )
    match = match_points(
        found.representatives,
        points,
        tol=settings.tolerances.match,
        anchor_norm=float(np.linalg.norm(A)),
    )
    return OracleSummary(
        n_starts=n_starts,
        n_converged=found.n_converged,
        n_dropped=found.n_dropped,
        n_rejected=found.n_rejected,
        match=match,
    )


def certify_trial(
    model: ModelSpec,
    A: np.ndarray,
    spectral: SpectralData,
    trial_seed: int,
    options: CertifyOptions,
    resample_attempts: int = 0,
) -> TrialRecord:
    """Run every check on one generic anchor."""
    settings = options.settings
    tol = settings.tolerances
    scale = 1.0 + float(np.linalg.norm(A))

    degree = model.ed_degree(cap=settings.enumeration_cap)
    points = enumerate_stationary(
        model, A, tol=tol.gap, cap=settings.enumeration_cap, spectral=spectral
    )
    max_membership = max((p.membership for p in points), default=0.0)
    max_stationarity = max((p.grad_residual for p in points), default=0.0)
    min_distance = min_pairwise_distance(points)

    failures: List[str] = []
    if len(points) != degree:
        failures.append("count_law")
    if max_membership > tol.membership * scale:
        failures.append("membership")
    if max_stationarity > tol.stationarity * scale:
        failures.append("stationarity")
    if min_distance <= tol.distinctness * scale:
        failures.append("distinctness")

    nearest_text: Optional[str] = None
    try:
        nearest = nearest_point(model, A, tol=tol.gap, spectral=spectral)
    except ParameterOrderViolation as e:
        logger.warning("Skipping nearest-point check: %s", e)
        nearest = None
    if nearest is not None and points:
        nearest_text = nearest.label_text
        best = argmin_point(points)
        if best.label_text != nearest_text:
            failures.append("nearest_label")
        if float(np.linalg.norm(nearest.X - best.X)) > tol.nearest * scale:
            failures.append("nearest_matrix")

    oracle: Optional[OracleSummary] = None
    if options.oracle:
        oracle = _run_oracle(model, A, points, degree, trial_seed, options)
        if oracle.match.n_found_clusters == 0:
            failures.append("oracle_empty")
        if oracle.match.unmatched_clusters:
            failures.append("oracle_unmatched")
        if oracle.match.missing_labels:
            logger.warning(
                "Oracle missed %d of %d stationary points on trial seed %d",
                len(oracle.match.missing_labels),
                degree,
                trial_seed,
            )

    if failures:
        logger.warning("Trial seed %d failed: %s", trial_seed, ", ".join(failures))
    return TrialRecord(
        trial_seed=trial_seed,
        degree_formula=degree,
        count_enumerated=len(points),
        max_membership_residual=max_membership,
        max_stationarity_residual=max_stationarity,
        min_pairwise_distance=min_distance,
        nearest_label=nearest_text,
        oracle=oracle,
        passed=not failures,
        failures=failures,
        resample_attempts=resample_attempts,
    )


def run_certify(
    model: ModelSpec,
    descriptor: Dict[str, Any],
    options: CertifyOptions,
    anchor: Optional[np.ndarray] = None,
) -> CertifyReport:
    """Certify ``options.trials`` seeded anchors, or the single given anchor.

    Trial t (1-based) samples its anchor from seed ``options.seed + t``.
    User-supplied anchors are never resampled.

    Raises
    ------
    DegenerateInput
        If a supplied anchor is degenerate, or sampled anchors stay
        degenerate through every resample.
    EnumerationOverflow
        If the degree exceeds the enumeration cap.
    """
    if options.trials < 1:
        raise ValueError(f"trials must be >= 1, got {options.trials}")
    settings = options.settings
    model.ed_degree(cap=settings.enumeration_cap)

    trials: List[TrialRecord] = []
    if anchor is not None:
        A = prepare_anchor(model, anchor)
        spectral = check_generic(model, A, tol=settings.tolerances.gap)
        trials.append(certify_trial(model, A, spectral, options.seed, options))
        source = "file"
    else:
        for t in tqdm(
            range(1, options.trials + 1), desc="trials", disable=not options.progress
        ):
            base_seed = options.seed + t
            A, spectral, resamples = draw_generic_anchor(
                model, base_seed, settings.resample_attempts, settings.tolerances.gap
            )
            trials.append(certify_trial(model, A, spectral, base_seed, options, resamples))
        source = "seeded"

    n_passed = sum(1 for t in trials if t.passed)
    logger.info(
        "Certified %s model: %d/%d trials passed", model.kind, n_passed, len(trials)
    )
    return CertifyReport(
        model_descriptor=descriptor,
        anchor_source=source,
        trials=trials,
        passed=n_passed == len(trials),
        tool_version=__version__,
        tolerances=settings.tolerances.model_dump(),
    )
