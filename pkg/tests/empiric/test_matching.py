"""Unit tests for greedy matching of oracle clusters to enumerated points."""

import numpy as np
import pytest
from pydantic import ValidationError

from eddeg.empiric import MatchReport, match_points
from eddeg.models import GrassmannSpec
from eddeg.stationary import enumerate_stationary


@pytest.fixture
def line_points():
    return enumerate_stationary(GrassmannSpec(n=2, k=1), np.diag([5.0, 2.0]))


@pytest.mark.unit
class TestMatchPoints:
    def test_complete_match(self, line_points):
        found = [np.diag([0.0, 1.0]) + 1e-9, np.diag([1.0, 0.0])]
        report = match_points(found, line_points, tol=1e-6)
        assert report.complete
        assert [(m.cluster, m.label) for m in report.matched_labels] == [(0, "{2}"), (1, "{1}")]
        assert report.max_match_distance == pytest.approx(2e-9)

    def test_unmatched_cluster_and_missing_label(self, line_points):
        found = [np.diag([1.0, 0.0]), 5.0 * np.eye(2)]
        report = match_points(found, line_points, tol=1e-6)
        assert not report.complete
        assert report.unmatched_clusters == [1]
        assert report.missing_labels == ["{2}"]

    def test_each_point_matched_once(self, line_points):
        found = [np.diag([1.0, 0.0]), np.diag([1.0, 1e-8])]
        report = match_points(found, line_points, tol=1e-6)
        assert len(report.matched_labels) == 1
        assert report.matched_labels[0].cluster == 0
        assert report.unmatched_clusters == [1]

    def test_threshold_scales_with_anchor(self, line_points):
        found = [np.diag([1.0, 1e-5]), np.diag([0.0, 1.0])]
        assert match_points(found, line_points, tol=1e-6).unmatched_clusters == [0]
        assert match_points(found, line_points, tol=1e-6, anchor_norm=99.0).complete

    def test_no_clusters(self, line_points):
        report = match_points([], line_points)
        assert report.missing_labels == ["{1}", "{2}"]
        assert report.max_match_distance == 0.0


@pytest.mark.unit
class TestMatchReport:
    def test_partition_is_validated(self):
        with pytest.raises(ValidationError):
            MatchReport(n_found_clusters=2, n_expected=0)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValidationError):
            MatchReport(n_found_clusters=-1, n_expected=0)
