"""Unit tests for report schemas and the deterministic writers."""

import json

import numpy as np
import pytest

from eddeg.cli.report import (
    CertifyReport,
    OracleSummary,
    TrialRecord,
    dumps_csv,
    dumps_json,
    points_frame,
    trials_frame,
    write_text_atomic,
)
from eddeg.empiric import MatchReport


def _trial(**overrides):
    fields = dict(
        trial_seed=43,
        degree_formula=4,
        count_enumerated=4,
        max_membership_residual=1e-15,
        max_stationarity_residual=2e-15,
        min_pairwise_distance=1.5,
        nearest_label="{1,2}",
        passed=True,
    )
    fields.update(overrides)
    return TrialRecord(**fields)


def _report(trials):
    return CertifyReport(
        model_descriptor={"model": "grassmann", "n": 4, "k": 2},
        anchor_source="seeded",
        trials=trials,
        passed=all(t.passed for t in trials),
        tool_version="0.1.0",
        tolerances={"gap": 1e-8},
    )


# =====================================================================
# JSON
# =====================================================================


@pytest.mark.unit
class TestDumpsJson:
    def test_seventeen_digits(self):
        assert dumps_json({"x": 0.1}) == '{\n  "x": 0.10000000000000001\n}'

    def test_non_finite_is_null(self):
        assert json.loads(dumps_json({"a": float("inf"), "b": float("nan")})) == {"a": None, "b": None}

    def test_flat_lists_inline(self):
        text = dumps_json({"data": [1.0, 0.5], "rows": 1})
        assert '"data": [1, 0.5]' in text

    def test_nested_structures(self):
        text = dumps_json([{"label": "{1}", "ok": True}, {"label": "{2}", "ok": False}])
        assert json.loads(text) == [{"label": "{1}", "ok": True}, {"label": "{2}", "ok": False}]
        assert text.startswith("[\n  {\n    ")

    def test_numpy_values(self):
        payload = {"n": np.int64(3), "x": np.float64(0.25), "m": np.eye(2)}
        assert json.loads(dumps_json(payload)) == {"n": 3, "x": 0.25, "m": [[1, 0], [0, 1]]}

    def test_round_trips_floats(self):
        value = 1.0 / 3.0
        assert json.loads(dumps_json({"v": value}))["v"] == value

    def test_deterministic(self):
        report = _report([_trial()])
        assert dumps_json(report.to_payload()) == dumps_json(report.to_payload())

    def test_rejects_unknown_types(self):
        with pytest.raises(TypeError):
            dumps_json({"s": {1, 2}})


# =====================================================================
# Schemas
# =====================================================================


@pytest.mark.unit
class TestSchemas:
    def test_pass_alias(self):
        payload = _report([_trial()]).to_payload()
        assert payload["pass"] is True
        assert "passed" not in payload
        assert payload["trials"][0]["passed"] is True

    def test_populate_by_alias(self):
        report = CertifyReport.model_validate(_report([_trial()]).to_payload())
        assert report.passed

    def test_oracle_summary_nested(self):
        match = MatchReport(n_found_clusters=0, n_expected=4, missing_labels=["{1,2}"])
        oracle = OracleSummary(n_starts=10, n_converged=8, n_dropped=2, n_rejected=0, match=match)
        payload = json.loads(dumps_json(_report([_trial(oracle=oracle)]).to_payload()))
        assert payload["trials"][0]["oracle"]["match"]["missing_labels"] == ["{1,2}"]


# =====================================================================
# CSV and output
# =====================================================================


@pytest.mark.unit
class TestCsv:
    def test_trials_frame_columns(self):
        match = MatchReport(n_found_clusters=0, n_expected=4)
        oracle = OracleSummary(n_starts=10, n_converged=10, n_dropped=0, n_rejected=0, match=match)
        frame = trials_frame(_report([_trial(), _trial(trial_seed=44, oracle=oracle)]))
        assert len(frame) == 2
        assert "oracle_n_starts" in frame.columns
        assert frame["trial_seed"].tolist() == [43, 44]

    def test_failures_joined(self):
        frame = trials_frame(_report([_trial(passed=False, failures=["count_law", "membership"])]))
        assert frame.loc[0, "failures"] == "count_law;membership"

    def test_points_csv(self):
        text = dumps_csv(points_frame([{"label": "{1}", "objective": 0.1, "grad_residual": 0.0}]))
        assert text == "label,objective,grad_residual\n{1},0.10000000000000001,0\n"


@pytest.mark.unit
class TestWriteTextAtomic:
    def test_creates_parents(self, tmp_path):
        path = tmp_path / "out" / "report.json"
        write_text_atomic(path, "{}\n")
        assert path.read_text(encoding="utf-8") == "{}\n"

    def test_overwrites(self, tmp_path):
        path = tmp_path / "report.json"
        path.write_text("old", encoding="utf-8")
        write_text_atomic(path, "new")
        assert path.read_text(encoding="utf-8") == "new"
        assert [p.name for p in tmp_path.iterdir()] == ["report.json"]
