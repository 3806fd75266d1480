"""
Genericity predicates and the cached factorizations enumeration needs.

Symmetric models decompose the anchor (or, for Schubert, the inner block
B33 of Q^T A Q). The Stiefel model works with M = A B^{1/2}: its singular
values c_i must be positive and pairwise distinct.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from eddeg.config import DEFAULT_GAP_TOL
from eddeg.errors import DegenerateInput, DegenerateSpectrum
from eddeg.matcore.linalg import EigenPair, SvdData, SymmetricMatrix, full_svd, sym_eig
from eddeg.models.base import ModelSpec
from eddeg.models.schubert import SchubertSpec
from eddeg.models.stiefel import StiefelSpec

logger = logging.getLogger(__name__)

PREDICATE_DISTINCT_EIGENVALUES = "distinct_eigenvalues"
PREDICATE_DISTINCT_INNER_EIGENVALUES = "distinct_inner_eigenvalues"
PREDICATE_POSITIVE_SINGULAR_VALUES = "positive_singular_values"
PREDICATE_DISTINCT_C_VALUES = "distinct_c_values"


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Factorizations of the anchor cached for enumeration.

    Attributes
    ----------
    eig : EigenPair or None
        Eigenpairs of A (flag, Grassmann) or of B33 (Schubert).
    b_eig : EigenPair or None
        Eigenpairs of B (Stiefel), repeated eigenvalues allowed.
    svd : SvdData or None
        SVD of A B^{1/2} (Stiefel).
    c_values : tuple of float
        Singular values of A B^{1/2} (Stiefel), decreasing.
    genericity_ok : bool
        Always True on a returned instance; failures raise instead.
    """

    kind: str
    eig: Optional[EigenPair] = None
    b_eig: Optional[EigenPair] = None
    svd: Optional[SvdData] = None
    c_values: Tuple[float, ...] = ()
    genericity_ok: bool = True


def prepare_anchor(model: ModelSpec, A: np.ndarray) -> np.ndarray:
    """Shape-check the anchor; symmetric models also require symmetry."""
    arr = model.check_shape(A)
    if model.is_symmetric:
        arr = SymmetricMatrix.from_array(arr).entries
    return arr


def _symmetric_eig(S: np.ndarray, tol: float, predicate: str, what: str) -> EigenPair:
    try:
        return sym_eig(S, gap_tol=tol)
    except DegenerateSpectrum as e:
        raise DegenerateInput(
            f"{what} has repeated eigenvalues (predicate {predicate}: smallest gap "
            f"{e.gap:.3e})",
            predicate=predicate,
        ) from e


def check_generic(model: ModelSpec, A: np.ndarray, tol: float = DEFAULT_GAP_TOL) -> SpectralData:
    """Check the model's genericity predicate for anchor A.

    Raises
    ------
    DegenerateInput
        With ``predicate`` naming the failed condition.
    ShapeMismatch, NotSymmetric
        If A does not fit the model.
    """
    A = prepare_anchor(model, A)

    if isinstance(model, StiefelSpec):
        M = A @ model.b_sqrt
        svd = full_svd(M)
        c = svd.sigmas
        scale = tol * (1.0 + float(np.linalg.norm(M)))
        if c[-1] <= scale:
            raise DegenerateInput(
                f"A B^(1/2) has a (near) zero singular value {c[-1]:.3e} "
                f"(predicate {PREDICATE_POSITIVE_SINGULAR_VALUES})",
                predicate=PREDICATE_POSITIVE_SINGULAR_VALUES,
            )
        if c.size > 1 and float(np.min(c[:-1] - c[1:])) <= scale:
            raise DegenerateInput(
                "values c_i = singular values of A B^(1/2) collide "
                f"(predicate {PREDICATE_DISTINCT_C_VALUES}: c = {np.round(c, 12).tolist()})",
                predicate=PREDICATE_DISTINCT_C_VALUES,
            )
        return SpectralData(
            kind=model.kind,
            b_eig=model.b_eig,
            svd=svd,
            c_values=tuple(float(x) for x in c),
        )

    if isinstance(model, SchubertSpec):
        inner = model.extract(A)
        if inner.shape[0] == 0:
            eig = EigenPair(Q=np.zeros((0, 0)), lambdas=np.zeros(0), gap=float("inf"))
        else:
            eig = _symmetric_eig(
                inner, tol, PREDICATE_DISTINCT_INNER_EIGENVALUES, "inner block B33"
            )
        return SpectralData(kind=model.kind, eig=eig)

    eig = _symmetric_eig(A, tol, PREDICATE_DISTINCT_EIGENVALUES, "anchor")
    return SpectralData(kind=model.kind, eig=eig)


__all__ = [
    "PREDICATE_DISTINCT_C_VALUES",
    "PREDICATE_DISTINCT_EIGENVALUES",
    "PREDICATE_DISTINCT_INNER_EIGENVALUES",
    "PREDICATE_POSITIVE_SINGULAR_VALUES",
    "SpectralData",
    "check_generic",
    "prepare_anchor",
]
