"""Unit tests for the Schubert model and adapted frames."""

import numpy as np
import pytest

from eddeg.errors import InvalidModel, NotNested, RankDeficient, ShapeMismatch
from eddeg.matcore.linalg import orthogonality_residual
from eddeg.matcore.sampling import random_nested_bases
from eddeg.models import SchubertSpec, adapted_frame, extract_inner, schubert_embed


# =====================================================================
# Adapted frames
# =====================================================================


@pytest.mark.unit
class TestAdaptedFrame:
    def test_coordinate_example(self):
        e = np.eye(4)
        Q = adapted_frame(e[:, [0]], e[:, :3])
        np.testing.assert_allclose(Q[:, 0], e[:, 0], atol=1e-12)
        np.testing.assert_allclose(Q[:, 1], e[:, 3], atol=1e-12)
        middle = Q[:, 2:]
        np.testing.assert_allclose(middle @ middle.T, np.diag([0.0, 1.0, 1.0, 0.0]), atol=1e-12)

    @pytest.mark.parametrize("n,k,m,seed", [(7, 1, 5, 0), (6, 2, 4, 1), (5, 0, 3, 2), (5, 2, 5, 3)])
    def test_random_nested_pair(self, n, k, m, seed):
        U_basis, W_basis = random_nested_bases(n, k, m, seed)
        Q = adapted_frame(U_basis, W_basis)
        assert orthogonality_residual(Q) < 1e-10
        # first k columns span U, columns k+1..k+n-m are orthogonal to W
        if k:
            P = Q[:, :k] @ Q[:, :k].T
            np.testing.assert_allclose(P @ U_basis, U_basis, atol=1e-9)
        np.testing.assert_allclose(Q[:, k : k + n - m].T @ W_basis, 0.0, atol=1e-9)

    def test_not_nested(self):
        e = np.eye(4)
        with pytest.raises(NotNested):
            adapted_frame(e[:, [3]], e[:, :2])

    def test_rank_deficient(self):
        e = np.eye(4)
        with pytest.raises(RankDeficient):
            adapted_frame(e[:, [0]], np.column_stack([e[:, 0], e[:, 0]]))


# =====================================================================
# Model
# =====================================================================


@pytest.mark.unit
class TestSchubertModel:
    def test_degree_and_dimension(self):
        model = SchubertSpec(n=6, k=1, l=2, m=4)
        assert model.degree() == 3
        assert model.dimension() == 2
        assert model.inner_size == 3

    @pytest.mark.parametrize("seed", range(5))
    def test_degree_ignores_frame_and_values(self, schubert_frame, seed):
        a, b = (float(v) for v in np.random.default_rng(seed).standard_normal(2))
        model = SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=seed), a=a, b=b)
        assert model.degree() == SchubertSpec(n=7, k=1, l=3, m=5).degree() == 6

    @pytest.mark.parametrize("k,l,m", [(2, 1, 3), (1, 4, 3), (0, 2, 6)])
    def test_bad_order(self, k, l, m):  # noqa: E741
        with pytest.raises(InvalidModel):
            SchubertSpec(n=5, k=k, l=l, m=m)

    def test_equal_values(self):
        with pytest.raises(InvalidModel):
            SchubertSpec(n=5, k=1, l=2, m=4, a=1.0, b=1.0)

    def test_frame_not_orthogonal(self):
        with pytest.raises(InvalidModel):
            SchubertSpec(n=3, k=1, l=1, m=2, Q=2.0 * np.eye(3))

    def test_zero_dimensional_case(self):
        model = SchubertSpec(n=4, k=2, l=2, m=3)
        np.testing.assert_allclose(model.random_point(0), np.diag([1.0, 1.0, 0.0, 0.0]), atol=1e-12)
        assert model.degree() == 1

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_point_membership(self, schubert_frame, seed):
        model = SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=seed))
        X = model.random_point(seed)
        assert model.membership_residual(X) <= 1e-9 * model.n
        assert model.block_residual(X) <= 1e-12
        assert model.grassmann_residual(X) <= 1e-9

    def test_embed_extract_inverse(self, schubert_frame):
        model = SchubertSpec(n=6, k=1, l=2, m=4, Q=schubert_frame(6, 1, 4, seed=4))
        X = model.random_point(3)
        X_inner = extract_inner(model, X)
        assert X_inner.shape == (3, 3)
        np.testing.assert_allclose(schubert_embed(model, X_inner), X, atol=1e-12)

    def test_embed_shape_mismatch(self):
        model = SchubertSpec(n=6, k=1, l=2, m=4)
        with pytest.raises(ShapeMismatch):
            schubert_embed(model, np.eye(2))

    def test_tangent_stays_in_inner_block(self, schubert_frame, sym_anchor):
        model = SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=2))
        X = model.random_point(1)
        T = model.tangent_project(X, sym_anchor(7, 3))
        Y = model.in_frame(T)
        Y[model.inner_slice, model.inner_slice] = 0.0
        np.testing.assert_allclose(Y, 0.0, atol=1e-10)

    def test_retract_lands_on_model(self, schubert_frame, sym_anchor):
        model = SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=2))
        Y = model.random_point(5) + 1e-2 * sym_anchor(7, 6)
        assert model.membership_residual(model.retract(Y)) <= 1e-10
