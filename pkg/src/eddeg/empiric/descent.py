"""
Projected Riemannian gradient descent on a model.

Iterates X <- retract(X - eta G) with G the tangent projection of X - A,
backtracking on the objective. The decrease is evaluated through the
exact identity

    f(X') - f(X) = <X' - X, (X' + X) / 2 - A>,

which avoids cancellation between two large objective values. A step
is accepted on the Armijo test, or, when its change in the objective is
within the rounding floor, only if it also lowers the gradient norm. The
step length grows only after a step accepted without backtracking.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from eddeg.config import OBJECTIVE_SLACK, DescentParams
from eddeg.errors import NoConvergence
from eddeg.models.base import ModelSpec
from eddeg.stationary.points import objective

logger = logging.getLogger(__name__)


@dataclass
class DescentResult:
    """Last iterate of a descent run and its history."""

    X: np.ndarray
    residual: float
    iterations: int
    converged: bool
    objectives: List[float] = field(default_factory=list)


def riemannian_descent(
    model: ModelSpec,
    A: np.ndarray,
    X0: np.ndarray,
    params: Optional[DescentParams] = None,
) -> DescentResult:
    """Descend 1/2 ||X - A||^2 on the model from X0.

    Parameters
    ----------
    model : ModelSpec
        Model the iterates stay on.
    A : np.ndarray
        Anchor shaped like the model's matrices.
    X0 : np.ndarray
        Starting point on the model.
    params : DescentParams, optional
        Defaults to ``DescentParams()``.

    Returns
    -------
    DescentResult
        ``residual <= grad_tol * (1 + ||A||_F)`` on return.

    Raises
    ------
    NoConvergence
        After ``max_iters`` iterations or when no step length passes the
        sufficient-decrease test; the partial result is attached.
    """
    params = params or DescentParams()
    A = model.check_shape(A)
    X = model.check_shape(X0)
    scale = 1.0 + float(np.linalg.norm(A))
    tol = params.grad_tol * scale
    eta = params.step if params.step is not None else 0.1 / scale
    min_step = params.min_step / scale

    f = objective(A, X)
    history = [f]
    G = model.project_tangent(X, X - A)
    residual = float(np.linalg.norm(G))
    # ||X||_F is constant on every model, so the floor is fixed per run.
    floor = OBJECTIVE_SLACK * scale * (1.0 + float(np.linalg.norm(X)))

    for it in range(params.max_iters + 1):
        if residual <= tol:
            logger.debug("Descent converged after %d iterations (residual %.3e)", it, residual)
            return DescentResult(X, residual, it, True, history)
        if it == params.max_iters:
            break

        target = -params.armijo * residual**2
        backtracked = False
        while True:
            X_new = model.retract(X - eta * G)
            delta = float(np.vdot(X_new - X, 0.5 * (X_new + X) - A))
            G_new = model.project_tangent(X_new, X_new - A)
            residual_new = float(np.linalg.norm(G_new))
            if delta <= eta * target:
                break
            # Inside the rounding floor the objective cannot rank steps.
            if delta <= floor and residual_new < residual:
                break
            eta *= params.shrink
            backtracked = True
            if eta < min_step:
                result = DescentResult(X, residual, it, False, history)
                raise NoConvergence(
                    f"descent stagnated at iteration {it} (residual {residual:.3e})",
                    residual=residual,
                    result=result,
                )

        X, G, residual = X_new, G_new, residual_new
        f += delta
        history.append(f)
        if not backtracked:
            eta *= 2.0

    result = DescentResult(X, residual, params.max_iters, False, history)
    raise NoConvergence(
        f"descent hit max_iters={params.max_iters} (residual {residual:.3e})",
        residual=residual,
        result=result,
    )


__all__ = ["DescentParams", "DescentResult", "riemannian_descent"]
