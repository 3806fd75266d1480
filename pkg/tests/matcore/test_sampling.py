"""Unit tests for seeded samplers."""

import numpy as np
import pytest

from eddeg.matcore.linalg import orthogonality_residual
from eddeg.matcore.sampling import (
    derive_seed,
    random_nested_bases,
    random_orthogonal,
    random_spd,
    random_symmetric,
)


@pytest.mark.unit
class TestSeeds:
    def test_derive_seed_is_stable(self):
        assert derive_seed(42, 1) == derive_seed(42, 1)

    def test_derive_seed_separates_keys(self):
        assert len({derive_seed(42, i) for i in range(20)}) == 20
        assert derive_seed(42, 1) != derive_seed(43, 1)

    def test_derive_seed_nonnegative(self):
        assert derive_seed(-5, 3) >= 0


@pytest.mark.unit
class TestSamplers:
    def test_symmetric_reproducible(self):
        a = random_symmetric(4, 7).entries
        b = random_symmetric(4, 7).entries
        np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(a, a.T)

    def test_different_seeds_differ(self):
        assert not np.allclose(random_symmetric(4, 7).entries, random_symmetric(4, 8).entries)

    def test_orthogonal(self):
        Q = random_orthogonal(5, 3)
        assert orthogonality_residual(Q) < 1e-12

    def test_orthogonal_empty(self):
        assert random_orthogonal(0, 3).shape == (0, 0)

    def test_spd_eigenvalue_range(self):
        w = np.linalg.eigvalsh(random_spd(4, 9).entries)
        assert np.all(w >= np.exp(-1.0) - 1e-12)
        assert np.all(w <= np.exp(1.0) + 1e-12)

    def test_nested_bases(self):
        U_basis, W_basis = random_nested_bases(6, 2, 4, 5)
        assert U_basis.shape == (6, 2)
        assert W_basis.shape == (6, 4)
        Qw, _ = np.linalg.qr(W_basis)
        assert np.linalg.norm(U_basis - Qw @ (Qw.T @ U_basis)) < 1e-10
        assert np.linalg.matrix_rank(W_basis) == 4

    def test_nested_bases_invalid(self):
        with pytest.raises(ValueError):
            random_nested_bases(4, 3, 2, 0)
