"""
Tests for the closed-form stationary points and nearest points.

Covers:
  - count law on every model family
  - worked examples with hand-computed objectives
  - genericity failures and their predicate names
  - nearest point against the enumeration argmin
"""

import numpy as np
import pytest

from eddeg.errors import (
    DegenerateInput,
    EnumerationOverflow,
    NotOnManifold,
    ParameterOrderViolation,
    ShapeMismatch,
)
from eddeg.matcore.sampling import random_orthogonal
from eddeg.models import FlagSpec, GrassmannSpec, SchubertSpec, StiefelSpec
from eddeg.stationary import (
    PREDICATE_DISTINCT_C_VALUES,
    PREDICATE_DISTINCT_EIGENVALUES,
    PREDICATE_DISTINCT_INNER_EIGENVALUES,
    PREDICATE_POSITIVE_SINGULAR_VALUES,
    argmin_point,
    check_generic,
    enumerate_stationary,
    label_text,
    min_pairwise_distance,
    nearest_point,
    objective,
    stationarity_residual,
)


def _anchor(model, seed, sym_anchor, rect_anchor):
    if model.is_symmetric:
        return sym_anchor(model.n, seed)
    return rect_anchor(model.n, model.k, seed)


# =====================================================================
# Worked examples
# =====================================================================


@pytest.mark.unit
class TestWorkedExamples:
    def test_grassmann_two_points(self):
        points = enumerate_stationary(GrassmannSpec(n=2, k=1), np.diag([5.0, 2.0]))
        assert [p.label_text for p in points] == ["{1}", "{2}"]
        assert [p.objective for p in points] == pytest.approx([10.0, 13.0])
        np.testing.assert_allclose(points[0].X, np.diag([1.0, 0.0]), atol=1e-12)

    def test_sphere_two_points(self):
        points = enumerate_stationary(StiefelSpec(n=2, k=1), np.array([[3.0], [4.0]]))
        assert [p.label_text for p in points] == ["(+)", "(-)"]
        assert [p.objective for p in points] == pytest.approx([8.0, 18.0])
        np.testing.assert_allclose(points[0].X, [[0.6], [0.8]], atol=1e-12)

    def test_flag_nearest(self):
        model = FlagSpec(n=3, ks=(1, 2), bs=(2.0, 1.0, 0.0))
        best = nearest_point(model, np.diag([3.0, 2.0, 1.0]))
        np.testing.assert_allclose(best.X, np.diag([2.0, 1.0, 0.0]), atol=1e-12)
        assert best.label_text == "[1,2,3]"

    def test_grassmann_nearest(self):
        best = nearest_point(GrassmannSpec(n=2, k=1), np.diag([5.0, 2.0]))
        np.testing.assert_allclose(best.X, np.diag([1.0, 0.0]), atol=1e-12)

    def test_sphere_nearest(self):
        best = nearest_point(StiefelSpec(n=2, k=1), np.array([3.0, 4.0]))
        np.testing.assert_allclose(best.X, [[0.6], [0.8]], atol=1e-12)

    def test_sphere_points_are_normalized_anchor(self, rect_anchor):
        a = rect_anchor(4, 1, 3)
        unit = a / np.linalg.norm(a)
        points = enumerate_stationary(StiefelSpec(n=4, k=1), a)
        assert len(points) == 2
        np.testing.assert_allclose(points[0].X, unit, atol=1e-9)
        np.testing.assert_allclose(points[1].X, -unit, atol=1e-9)

    def test_orthogonal_group(self, rect_anchor):
        points = enumerate_stationary(StiefelSpec(n=3, k=3), rect_anchor(3, 3, 5))
        assert len(points) == 8
        for p in points:
            np.testing.assert_allclose(p.X.T @ p.X, np.eye(3), atol=1e-9)

    def test_label_formats(self):
        flag = enumerate_stationary(FlagSpec(n=3, ks=(1,)), np.diag([3.0, 2.0, 1.0]))
        assert [p.label_text for p in flag] == ["[1,2,2]", "[2,1,2]", "[2,2,1]"]
        assert label_text((1, 3)) == "{1,3}"


# =====================================================================
# Count law and certificates
# =====================================================================


@pytest.mark.unit
class TestCountLaw:
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_every_model(self, model_zoo, sym_anchor, rect_anchor, seed):
        for model, expected in model_zoo:
            A = _anchor(model, seed, sym_anchor, rect_anchor)
            scale = 1.0 + np.linalg.norm(A)
            points = enumerate_stationary(model, A)
            assert len(points) == expected == model.degree()
            assert max(p.membership for p in points) <= 1e-8 * scale
            assert max(p.grad_residual for p in points) <= 1e-7 * scale
            assert min_pairwise_distance(points) > 1e-6 * scale

    def test_grad_residual_matches_checked_residual(self, sym_anchor):
        model = FlagSpec(n=4, ks=(1, 3))
        A = sym_anchor(4, 8)
        for p in enumerate_stationary(model, A):
            assert stationarity_residual(model, A, p.X) == pytest.approx(p.grad_residual, abs=1e-12)

    def test_stiefel_points_respect_b(self, spd, rect_anchor):
        B = spd(3, 4)
        for p in enumerate_stationary(StiefelSpec(n=5, k=3, B=B), rect_anchor(5, 3, 2)):
            np.testing.assert_allclose(p.X.T @ p.X, B, atol=1e-10)

    def test_stiefel_count_independent_of_b(self, spd, rect_anchor):
        A = rect_anchor(6, 4, 1)
        counts = {len(enumerate_stationary(StiefelSpec(n=6, k=4, B=spd(4, s)), A)) for s in (10, 20)}
        assert counts == {16}

    def test_schubert_points_satisfy_both_residuals(self, schubert_frame, sym_anchor):
        model = SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=6))
        for p in enumerate_stationary(model, sym_anchor(7, 4)):
            assert model.block_residual(p.X) <= 1e-10
            assert model.grassmann_residual(p.X) <= 1e-10

    def test_schubert_single_point_cases(self, sym_anchor):
        for model in (SchubertSpec(n=4, k=2, l=2, m=3), SchubertSpec(n=4, k=2, l=2, m=2)):
            points = enumerate_stationary(model, sym_anchor(4, 1))
            assert len(points) == 1
            assert points[0].membership <= 1e-12

    def test_overflow(self, sym_anchor):
        with pytest.raises(EnumerationOverflow):
            enumerate_stationary(GrassmannSpec(n=20, k=10), sym_anchor(20, 0), cap=1000)

    def test_deterministic(self, sym_anchor):
        model = FlagSpec(n=4, ks=(1, 2))
        A = sym_anchor(4, 2)
        first = enumerate_stationary(model, A)
        second = enumerate_stationary(model, A)
        for p, q in zip(first, second):
            assert p.label == q.label
            np.testing.assert_array_equal(p.X, q.X)


# =====================================================================
# Genericity
# =====================================================================


@pytest.mark.unit
class TestGenericity:
    def test_flag_identity(self):
        with pytest.raises(DegenerateInput) as exc:
            enumerate_stationary(FlagSpec(n=3, ks=(1,)), np.eye(3))
        assert exc.value.predicate == PREDICATE_DISTINCT_EIGENVALUES
        assert PREDICATE_DISTINCT_EIGENVALUES in str(exc.value)

    def test_stiefel_c_collision(self):
        model = StiefelSpec(n=2, k=2, B=np.diag([1.0, 4.0]))
        with pytest.raises(DegenerateInput) as exc:
            check_generic(model, np.diag([2.0, 1.0]))
        assert exc.value.predicate == PREDICATE_DISTINCT_C_VALUES

    def test_stiefel_rank_deficient_anchor(self):
        A = np.zeros((3, 2))
        A[0, 0] = 1.0
        with pytest.raises(DegenerateInput) as exc:
            check_generic(StiefelSpec(n=3, k=2), A)
        assert exc.value.predicate == PREDICATE_POSITIVE_SINGULAR_VALUES

    def test_schubert_inner_block(self):
        with pytest.raises(DegenerateInput) as exc:
            check_generic(SchubertSpec(n=7, k=1, l=3, m=5), np.eye(7))
        assert exc.value.predicate == PREDICATE_DISTINCT_INNER_EIGENVALUES

    def test_stiefel_c_values(self, spd, rect_anchor):
        model = StiefelSpec(n=4, k=2, B=spd(2, 1))
        A = rect_anchor(4, 2, 9)
        sd = check_generic(model, A)
        expected = np.linalg.svd(A @ model.b_sqrt, compute_uv=False)
        np.testing.assert_allclose(sd.c_values, expected, rtol=1e-10)

    def test_asymmetric_anchor_rejected(self):
        with pytest.raises(ShapeMismatch):
            enumerate_stationary(GrassmannSpec(n=2, k=1), np.array([[1.0, 2.0], [0.0, 3.0]]))


# =====================================================================
# Nearest point
# =====================================================================


@pytest.mark.unit
class TestNearestPoint:
    @pytest.mark.parametrize("seed", [4, 5])
    def test_matches_enumeration_argmin(self, model_zoo, sym_anchor, rect_anchor, seed):
        for model, _ in model_zoo:
            if isinstance(model, FlagSpec) and not model.bs_decreasing():
                continue
            A = _anchor(model, seed, sym_anchor, rect_anchor)
            best = argmin_point(enumerate_stationary(model, A))
            near = nearest_point(model, A)
            assert near.label_text == best.label_text
            np.testing.assert_allclose(near.X, best.X, atol=1e-10 * (1.0 + np.linalg.norm(A)))

    @pytest.mark.parametrize("seed", range(5))
    def test_grassmann_equals_trivial_schubert(self, sym_anchor, seed):
        A = sym_anchor(5, seed)
        g = nearest_point(GrassmannSpec(n=5, k=2), A)
        s = nearest_point(SchubertSpec(n=5, k=0, l=2, m=5), A)
        np.testing.assert_allclose(g.X, s.X, atol=1e-10 * (1.0 + np.linalg.norm(A)))

    def test_flag_order_violation(self):
        with pytest.raises(ParameterOrderViolation):
            nearest_point(FlagSpec(n=3, ks=(1, 2), bs=(0.0, 1.0, 2.0)), np.diag([3.0, 2.0, 1.0]))

    def test_grassmann_order_violation(self):
        with pytest.raises(ParameterOrderViolation):
            nearest_point(GrassmannSpec(n=2, k=1, a=0.0, b=1.0), np.diag([5.0, 2.0]))

    def test_increasing_values_still_enumerate(self):
        points = enumerate_stationary(GrassmannSpec(n=2, k=1, a=0.0, b=1.0), np.diag([5.0, 2.0]))
        assert len(points) == 2


# =====================================================================
# Invariance and certificates
# =====================================================================


@pytest.mark.unit
class TestInvariance:
    @pytest.mark.parametrize(
        "model", [FlagSpec(n=4, ks=(1, 3)), GrassmannSpec(n=4, k=2)], ids=["flag", "grassmann"]
    )
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_conjugated_anchor_keeps_objectives(self, sym_anchor, model, seed):
        A = sym_anchor(4, seed)
        Q = random_orthogonal(4, seed + 100)
        C = Q.T @ A @ Q
        before = sorted(p.objective for p in enumerate_stationary(model, A))
        after = sorted(p.objective for p in enumerate_stationary(model, 0.5 * (C + C.T)))
        np.testing.assert_allclose(after, before, rtol=0.0, atol=1e-9)

    @pytest.mark.parametrize(
        "model",
        [GrassmannSpec(n=4, k=2), FlagSpec(n=4, ks=(1, 3)), StiefelSpec(n=4, k=2)],
        ids=["grassmann", "flag", "stiefel"],
    )
    def test_random_points_are_not_stationary(self, model, sym_anchor, rect_anchor):
        hits = 0
        for seed in range(100):
            A = _anchor(model, seed, sym_anchor, rect_anchor)
            X = model.random_point(seed + 1000)
            if stationarity_residual(model, A, X) > 1e-3 * (1.0 + np.linalg.norm(A)):
                hits += 1
        assert hits >= 99


# =====================================================================
# Helpers
# =====================================================================


@pytest.mark.unit
class TestHelpers:
    def test_objective(self):
        assert objective(np.diag([5.0, 2.0]), np.diag([1.0, 0.0])) == pytest.approx(10.0)

    def test_objective_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            objective(np.eye(2), np.eye(3))

    def test_stationarity_residual_off_model(self):
        with pytest.raises(NotOnManifold):
            stationarity_residual(GrassmannSpec(n=2, k=1), np.eye(2), np.eye(2))

    def test_min_distance_single_point(self):
        assert min_pairwise_distance([np.eye(2)]) == float("inf")

    def test_min_distance(self):
        assert min_pairwise_distance([np.zeros(2), np.array([3.0, 4.0])]) == pytest.approx(5.0)

    def test_argmin_empty(self):
        with pytest.raises(ValueError):
            argmin_point([])
