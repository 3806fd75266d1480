"""
Linear-algebra and combinatorics substrate.

Usage:
    from eddeg.matcore import sym_eig, full_svd, block_assignments

    pair = sym_eig(S)          # lambdas strictly decreasing
    labels = block_assignments((1, 1, 2))
"""

from eddeg.matcore.combinatorics import (
    BlockAssignment,
    SignVector,
    block_assignments,
    k_subsets,
    multinomial,
    sign_str,
    sign_vectors,
    subset_str,
)
from eddeg.matcore.linalg import (
    EigenPair,
    RectMatrix,
    SvdData,
    SymmetricMatrix,
    as_array,
    eigh_descending,
    full_svd,
    orthogonality_residual,
    spd_inv_sqrt,
    spd_sqrt,
    sym_eig,
)
from eddeg.matcore.sampling import (
    derive_seed,
    random_nested_bases,
    random_orthogonal,
    random_rect,
    random_spd,
    random_symmetric,
)

__all__ = [
    "BlockAssignment",
    "EigenPair",
    "RectMatrix",
    "SignVector",
    "SvdData",
    "SymmetricMatrix",
    "as_array",
    "block_assignments",
    "derive_seed",
    "eigh_descending",
    "full_svd",
    "k_subsets",
    "multinomial",
    "orthogonality_residual",
    "random_nested_bases",
    "random_orthogonal",
    "random_rect",
    "random_spd",
    "random_symmetric",
    "sign_str",
    "sign_vectors",
    "spd_inv_sqrt",
    "spd_sqrt",
    "subset_str",
    "sym_eig",
]
