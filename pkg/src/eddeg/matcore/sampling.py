"""
Seeded random matrices.

Every sampler builds its own ``np.random.default_rng(seed)`` so output is
bitwise deterministic for a fixed seed on a given platform.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
import scipy.linalg

from eddeg.matcore.linalg import RectMatrix, SymmetricMatrix


def derive_seed(seed: int, *keys: int) -> int:
    """Child seed for (seed, *keys), stable across runs."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def random_symmetric(n: int, seed: int) -> SymmetricMatrix:
    """i.i.d. standard normal entries, then symmetrized."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n))
    return SymmetricMatrix.symmetric_part(G)


def random_rect(n: int, k: int, seed: int) -> RectMatrix:
    rng = np.random.default_rng(seed)
    return RectMatrix.from_array(rng.standard_normal((n, k)))


def _haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = scipy.linalg.qr(rng.standard_normal((n, n)))
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """Haar-distributed n x n orthogonal matrix."""
    if n == 0:
        return np.zeros((0, 0))
    return _haar_orthogonal(n, np.random.default_rng(seed))


def random_spd(k: int, seed: int) -> SymmetricMatrix:
    """Positive definite k x k matrix with eigenvalues exp(u), u ~ U(-1, 1)."""
    rng = np.random.default_rng(seed)
    V = _haar_orthogonal(k, rng)
    w = np.exp(rng.uniform(-1.0, 1.0, size=k))
    return SymmetricMatrix.symmetric_part((V * w) @ V.T)


def random_nested_bases(n: int, k: int, m: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Bases (U, W) of random subspaces with dim U = k, dim W = m, U inside W.

    Both bases are generic (non-orthonormal) spanning sets.
    """
    if not 0 <= k <= m <= n:
        raise ValueError(f"need 0 <= k <= m <= n, got k={k}, m={m}, n={n}")
    rng = np.random.default_rng(seed)
    frame = _haar_orthogonal(n, rng)[:, :m]
    W_basis = frame @ rng.standard_normal((m, m))
    U_basis = frame @ rng.standard_normal((m, k))
    return U_basis, W_basis
