"""
Isospectral orbits: symmetric matrices with prescribed eigenvalues and
multiplicities.

Shared by the flag model, the Grassmann model (two eigenvalues) and the
inner block of the Schubert model. Groups are given as parallel
``values`` / ``sizes`` sequences; zero-size groups are allowed and simply
do not occur in the spectrum.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

from eddeg.matcore.linalg import eigh_descending


def _nonempty(values: Sequence[float], sizes: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    vals = np.asarray(values, dtype=float)
    szs = np.asarray(sizes, dtype=int)
    keep = szs > 0
    return vals[keep], szs[keep]


def sorted_spectrum(values: Sequence[float], sizes: Sequence[int]) -> np.ndarray:
    """The model spectrum, each value repeated by its size, sorted decreasing."""
    vals, szs = _nonempty(values, sizes)
    return np.sort(np.repeat(vals, szs))[::-1]


def group_ids(values: Sequence[float], sizes: Sequence[int]) -> np.ndarray:
    """Group index of each position of ``sorted_spectrum``."""
    vals, szs = _nonempty(values, sizes)
    order = np.argsort(-vals, kind="stable")
    return np.repeat(np.arange(len(order)), szs[order])


def residual(X: np.ndarray, values: Sequence[float], sizes: Sequence[int]) -> float:
    """Max of the normalized defining-equation residuals.

    - ||prod_j (X - b_j I)||_F / (1 + ||X||_F)^q, q nonempty groups
    - |tr X - sum_j s_j b_j| / (1 + ||X||_F)
    - ||X - X^T||_F / (1 + ||X||_F)
    - max_i |lambda_i(X) - d_i| / (1 + ||X||_F), d the sorted spectrum
    """
    n = X.shape[0]
    if n == 0:
        return 0.0
    vals, szs = _nonempty(values, sizes)
    scale = 1.0 + float(np.linalg.norm(X))
    eye = np.eye(n)

    product = eye.copy()
    for b in vals:
        product = product @ (X - b * eye)
    poly = float(np.linalg.norm(product)) / scale ** len(vals)

    trace = abs(float(np.trace(X)) - float(np.dot(vals, szs))) / scale
    sym = float(np.linalg.norm(X - X.T)) / scale

    lam = eigh_descending(X).lambdas
    spectrum = float(np.max(np.abs(lam - sorted_spectrum(vals, szs)))) / scale

    return max(poly, trace, sym, spectrum)


def point(V: np.ndarray, diagonal: np.ndarray) -> np.ndarray:
    """V diag(diagonal) V^T, symmetrized."""
    X = (V * diagonal) @ V.T
    return 0.5 * (X + X.T)


def project_tangent(
    X: np.ndarray, Z: np.ndarray, values: Sequence[float], sizes: Sequence[int]
) -> np.ndarray:
    """Zero the same-group blocks of the symmetric part of Z in an eigenbasis of X."""
    if X.shape[0] == 0:
        return np.zeros_like(X)
    V = eigh_descending(X).Q
    gid = group_ids(values, sizes)
    Zs = 0.5 * (Z + Z.T)
    Zp = V.T @ Zs @ V
    Zp[gid[:, None] == gid[None, :]] = 0.0
    T = V @ Zp @ V.T
    return 0.5 * (T + T.T)


def retract(Y: np.ndarray, values: Sequence[float], sizes: Sequence[int]) -> np.ndarray:
    """Reassign the model spectrum to the eigenvectors of sym(Y) by rank order.

    This is the metric projection onto the orbit.
    """
    if Y.shape[0] == 0:
        return np.zeros_like(Y)
    V = eigh_descending(0.5 * (Y + Y.T)).Q
    return point(V, sorted_spectrum(values, sizes))
