"""
Configuration constants and settings for eddeg.

Defines the tolerance ladder, enumeration limits, descent defaults and
seeds used across the library, plus the YAML-backed ``Settings`` model
the CLI reads through ``load_settings``.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Genericity and factorization
# ---------------------------------------------------------------------------
DEFAULT_GAP_TOL: float = 1e-8  # relative to 1 + ||S||_F
SYMMETRY_TOL: float = 1e-12  # relative to 1 + max|entries|
ORTHOGONALITY_TOL: float = 1e-10  # per unit of n
NESTING_TOL: float = 1e-8
RANK_TOL: float = 1e-8

# ---------------------------------------------------------------------------
# Enumeration limits
# ---------------------------------------------------------------------------
ENUMERATION_CAP: int = 10**7

# ---------------------------------------------------------------------------
# Tolerance ladder (all relative to 1 + ||A||_F)
# ---------------------------------------------------------------------------
MEMBERSHIP_TOL: float = 1e-8
STATIONARITY_TOL: float = 1e-7
DISTINCTNESS_TOL: float = 1e-6
NEAREST_TOL: float = 1e-10

# Absolute membership budget for sampled points, scaled by n
MODEL_TOL: float = 1e-9

# Residual above which local operations refuse a point
ON_MODEL_TOL: float = 1e-6

# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------
MATCH_TOL: float = 1e-4
CLUSTER_TOL: float = 1e-4
ORACLE_CERTIFY_TOL: float = 1e-6
STARTS_PER_DEGREE: int = 40
MIN_REWEIGHT_DEGREE: int = 8

# ---------------------------------------------------------------------------
# Descent defaults
# ---------------------------------------------------------------------------
DEFAULT_MAX_ITERS: int = 5000
DEFAULT_SHRINK: float = 0.5
DEFAULT_GRAD_TOL: float = 1e-9
DEFAULT_ARMIJO: float = 1e-4
DEFAULT_MIN_STEP: float = 1e-14
OBJECTIVE_SLACK: float = 1e-14  # rounding floor per unit of (1 + ||A||_F)(1 + ||X||_F)

# ---------------------------------------------------------------------------
# Runs
# ---------------------------------------------------------------------------
RESAMPLE_ATTEMPTS: int = 5
DEFAULT_SEED: int = 42
SEED_ENV_VAR: str = "EDDEG_SEED"
CONFIG_ENV_VAR: str = "EDDEG_CONFIG"


class DescentParams(BaseModel):
    """Parameters of the projected Riemannian descent used by the oracle."""

    model_config = ConfigDict(frozen=True)

    max_iters: PositiveInt = Field(DEFAULT_MAX_ITERS, description="Iteration cap")
    step: Optional[PositiveFloat] = Field(
        None, description="Initial step size; None means 0.1 / (1 + ||A||_F)"
    )
    shrink: float = Field(
        DEFAULT_SHRINK, gt=0.0, lt=1.0, description="Backtracking factor"
    )
    grad_tol: PositiveFloat = Field(
        DEFAULT_GRAD_TOL,
        description="Convergence threshold on the gradient norm, relative",
    )
    armijo: float = Field(
        DEFAULT_ARMIJO, gt=0.0, lt=1.0, description="Sufficient decrease constant"
    )
    min_step: PositiveFloat = Field(
        DEFAULT_MIN_STEP, description="Step size below which descent stagnates"
    )


class Tolerances(BaseModel):
    """The tolerance ladder echoed into every certification report."""

    model_config = ConfigDict(frozen=True)

    gap: PositiveFloat = DEFAULT_GAP_TOL
    membership: PositiveFloat = MEMBERSHIP_TOL
    stationarity: PositiveFloat = STATIONARITY_TOL
    distinctness: PositiveFloat = DISTINCTNESS_TOL
    nearest: PositiveFloat = NEAREST_TOL
    match: PositiveFloat = MATCH_TOL
    cluster: PositiveFloat = CLUSTER_TOL
    oracle_certify: PositiveFloat = ORACLE_CERTIFY_TOL


class Settings(BaseModel):
    """Top-level runtime settings (YAML file, then CLI overrides)."""

    tolerances: Tolerances = Field(default_factory=Tolerances)
    descent: DescentParams = Field(default_factory=DescentParams)
    enumeration_cap: PositiveInt = ENUMERATION_CAP
    resample_attempts: PositiveInt = RESAMPLE_ATTEMPTS
    starts_per_degree: PositiveInt = STARTS_PER_DEGREE
    reweight_degree: Optional[PositiveInt] = None
    seed: int = DEFAULT_SEED


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Load settings from a YAML file.

    Resolution order: explicit ``path``, then ``$EDDEG_CONFIG``, then
    built-in defaults. Missing sections fall back to their defaults.

    Raises
    ------
    FileNotFoundError
        If an explicitly named file does not exist.
    pydantic.ValidationError
        If the file contents violate the settings schema.
    """
    if path is None:
        env_path = os.environ.get(CONFIG_ENV_VAR, "").strip()
        path = env_path or None

    if path is None:
        return Settings()

    config_path = Path(path)
    with config_path.open("r", encoding="utf-8") as f:
        data: Dict[str, Any] = yaml.safe_load(f) or {}

    logger.debug("Loaded settings from %s", config_path)
    return Settings.model_validate(data)
