"""
Isospectral model of the flag manifold and quadratic model of the
Grassmannian.

A flag model with ``ks = (k_1 < ... < k_p)`` and eigenvalues
``bs = (b_1, ..., b_{p+1})`` is the set of symmetric n x n matrices whose
eigenvalue b_j has multiplicity k_j - k_{j-1} (k_0 = 0, k_{p+1} = n). The
Grassmann model Gr_{a,b}(k, n) is the p = 1 case with eigenvalues a, b of
multiplicities k, n - k.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Tuple

import numpy as np

from eddeg.errors import InvalidModel
from eddeg.matcore.combinatorics import multinomial
from eddeg.matcore.sampling import random_orthogonal
from eddeg.models import isospectral
from eddeg.models.base import ModelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FlagSpec(ModelSpec):
    """Flag manifold Flag(k_1, ..., k_p; n) as an isospectral orbit.

    Parameters
    ----------
    n : int
        Ambient size.
    ks : tuple of int
        Strictly increasing, 0 < k_1 < ... < k_p < n.
    bs : tuple of float, optional
        p + 1 pairwise distinct eigenvalues; defaults to (p, p-1, ..., 0).
    """

    kind: ClassVar[str] = "flag"

    n: int
    ks: Tuple[int, ...]
    bs: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        ks = tuple(int(k) for k in self.ks)
        object.__setattr__(self, "ks", ks)
        if self.n < 2:
            raise InvalidModel(f"flag model needs n >= 2, got n={self.n}")
        if not ks:
            raise InvalidModel("flag model needs at least one k")
        if any(b <= a for a, b in zip((0,) + ks, ks + (self.n,))):
            raise InvalidModel(
                f"ks must satisfy 0 < k_1 < ... < k_p < n, got ks={ks}, n={self.n}"
            )
        p = len(ks)
        if self.bs is None:
            bs = tuple(float(p - j) for j in range(p + 1))
        else:
            bs = tuple(float(b) for b in self.bs)
        if len(bs) != p + 1:
            raise InvalidModel(f"need {p + 1} eigenvalues bs, got {len(bs)}")
        if len(set(bs)) != len(bs):
            raise InvalidModel(f"eigenvalues bs must be pairwise distinct, got {bs}")
        object.__setattr__(self, "bs", bs)

    @property
    def p(self) -> int:
        return len(self.ks)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        edges = (0,) + self.ks + (self.n,)
        return tuple(b - a for a, b in zip(edges, edges[1:]))

    @property
    def ambient_shape(self) -> tuple:
        return (self.n, self.n)

    def degree(self) -> int:
        return multinomial(self.block_sizes)

    def dimension(self) -> int:
        return (self.n**2 - sum(s * s for s in self.block_sizes)) // 2

    def bs_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.bs, self.bs[1:]))

    def membership_residual(self, X: np.ndarray) -> float:
        return isospectral.residual(self.check_shape(X), self.bs, self.block_sizes)

    def random_point(self, seed: int) -> np.ndarray:
        V = random_orthogonal(self.n, seed)
        diagonal = np.repeat(np.asarray(self.bs), self.block_sizes)
        return isospectral.point(V, diagonal)

    def project_tangent(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        return isospectral.project_tangent(X, Z, self.bs, self.block_sizes)

    def retract(self, Y: np.ndarray) -> np.ndarray:
        return isospectral.retract(self.check_shape(Y), self.bs, self.block_sizes)

    def describe(self) -> dict:
        return {"model": self.kind, "n": self.n, "ks": list(self.ks), "bs": list(self.bs)}


@dataclass(frozen=True, eq=False)
class GrassmannSpec(ModelSpec):
    """Quadratic model Gr_{a,b}(k, n); (a, b) = (1, 0) gives projectors."""

    kind: ClassVar[str] = "grassmann"

    n: int
    k: int
    a: float = 1.0
    b: float = 0.0
    _flag: FlagSpec = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.k < self.n:
            raise InvalidModel(f"Grassmann model needs 1 <= k < n, got k={self.k}, n={self.n}")
        if self.a == self.b:
            raise InvalidModel(f"Grassmann model needs a != b, got a=b={self.a}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "_flag", FlagSpec(self.n, (self.k,), (self.a, self.b)))

    def as_flag(self) -> FlagSpec:
        """The same model as a flag with p = 1."""
        return self._flag

    @property
    def ambient_shape(self) -> tuple:
        return (self.n, self.n)

    def degree(self) -> int:
        return math.comb(self.n, self.k)

    def dimension(self) -> int:
        return self.k * (self.n - self.k)

    def membership_residual(self, X: np.ndarray) -> float:
        return self._flag.membership_residual(X)

    def random_point(self, seed: int) -> np.ndarray:
        return self._flag.random_point(seed)

    def project_tangent(self, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
        return self._flag.project_tangent(X, Z)

    def retract(self, Y: np.ndarray) -> np.ndarray:
        return self._flag.retract(Y)

    def describe(self) -> dict:
        return {"model": self.kind, "n": self.n, "k": self.k, "a": self.a, "b": self.b}
