"""
Lexicographic enumeration of the combinatorial labels of stationary points.

Block assignments label flag points, k-subsets label Grassmann and
Schubert points, sign vectors label Stiefel points. Every enumerator
checks its count against a cap before producing anything.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from eddeg.config import ENUMERATION_CAP
from eddeg.errors import EnumerationOverflow

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


class SignVector(tuple):
    """Tuple of +1/-1 entries that renders as (+,-,...)."""

    def __str__(self) -> str:
        return sign_str(self)


@dataclass(frozen=True)
class BlockAssignment:
    """Assignment of positions 1..n to blocks 1..p+1 with fixed block sizes.

    ``labels[i] = j`` puts position i + 1 in block j (1-based).
    """

    labels: Tuple[int, ...]
    block_sizes: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != sum(self.block_sizes):
            raise ValueError("labels length must equal the sum of block sizes")
        for j, size in enumerate(self.block_sizes, start=1):
            if self.labels.count(j) != size:
                raise ValueError(f"label {j} must occur exactly {size} times")

    def __str__(self) -> str:
        return "[" + ",".join(str(j) for j in self.labels) + "]"


def multinomial(sizes: Sequence[int]) -> int:
    """(sum sizes)! / prod(size_j!), exact."""
    total = 0
    result = 1
    for size in sizes:
        if size < 0:
            raise ValueError("sizes must be nonnegative")
        total += size
        result *= math.comb(total, size)
    return result


def check_cap(count: int, cap: Optional[int], what: str) -> None:
    """Raise EnumerationOverflow when ``count`` exceeds ``cap`` (None = no cap)."""
    if cap is not None and count > cap:
        raise EnumerationOverflow(
            f"{what}: {count} items exceed the enumeration cap {cap}",
            count=count,
            cap=cap,
        )


def subset_str(subset: Subset) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def sign_str(signs: SignVector) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


# ---------------------------------------------------------------------------
# Enumerators
# ---------------------------------------------------------------------------


def _next_multiset_permutation(a: List[int]) -> Optional[List[int]]:
    """Next permutation of ``a`` in lexicographic order, None after the last."""
    n = len(a)
    j = n - 2
    while j >= 0 and a[j] >= a[j + 1]:
        j -= 1
    if j < 0:
        return None
    i = n - 1
    while a[j] >= a[i]:
        i -= 1
    a[j], a[i] = a[i], a[j]
    return a[: j + 1] + a[j + 1 :][::-1]


def iter_block_assignments(block_sizes: Sequence[int]) -> Iterator[BlockAssignment]:
    sizes = tuple(int(s) for s in block_sizes)
    current: Optional[List[int]] = [
        j for j, size in enumerate(sizes, start=1) for _ in range(size)
    ]
    while current is not None:
        yield BlockAssignment(labels=tuple(current), block_sizes=sizes)
        current = _next_multiset_permutation(current)


def block_assignments(
    block_sizes: Sequence[int], cap: Optional[int] = ENUMERATION_CAP
) -> List[BlockAssignment]:
    """All assignments with the given block sizes, lexicographically ordered.

    Raises
    ------
    ValueError
        If a block size is not a positive integer.
    EnumerationOverflow
        If the multinomial count exceeds ``cap``.
    """
    sizes = tuple(int(s) for s in block_sizes)
    if not sizes or any(s <= 0 for s in sizes):
        raise ValueError(f"block sizes must be positive integers, got {sizes}")
    count = multinomial(sizes)
    check_cap(count, cap, f"block assignments {sizes}")
    out = list(iter_block_assignments(sizes))
    logger.debug("Enumerated %d block assignments for sizes %s", len(out), sizes)
    return out


def k_subsets(m: int, r: int, cap: Optional[int] = ENUMERATION_CAP) -> List[Subset]:
    """All r-subsets of {1..m} as increasing tuples, lexicographically ordered."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got m={m}, r={r}")
    check_cap(math.comb(m, r), cap, f"{r}-subsets of {m}")
    return list(itertools.combinations(range(1, m + 1), r))


def sign_vectors(k: int, cap: Optional[int] = ENUMERATION_CAP) -> List[SignVector]:
    """All vectors in {+1, -1}^k, lexicographic with +1 before -1."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    check_cap(2**k, cap, f"sign vectors of length {k}")
    return [SignVector(s) for s in itertools.product((1, -1), repeat=k)]
