#!/usr/bin/env python3
"""
eddeg - Acceptance Scenario Runner

How to Run:
  python3 scripts/run_acceptance.py --scenarios 1,2,3,4,5,6,7,8,9,10

Examples:
  # Everything with the default trial counts
  python3 scripts/run_acceptance.py

  # Count laws only, 3 trials each, report under reports/
  python3 scripts/run_acceptance.py --scenarios 1,2,3,4 --trials 3 --output-dir reports

  # Oracle completeness with 20 trials per model
  python3 scripts/run_acceptance.py --scenarios 8 --oracle-trials 20 --seed 7

Acceptance criteria:
- Each scenario runs in isolation; one failure never aborts the others
  (unless --fail-fast).
- Per-scenario timing and outcome clearly logged (stderr + optional log file).
- The manifest is written atomically and never left half-written.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime as dt
import logging
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

# Make "src/" importable when running as: python3 scripts/run_acceptance.py
REPO_ROOT = Path(__file__).resolve().parents[1]
SRC_DIR = REPO_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

import numpy as np  # noqa: E402

from eddeg.cli.certify import CertifyOptions, draw_generic_anchor, run_certify  # noqa: E402
from eddeg.cli.report import dumps_json  # noqa: E402
from eddeg.config import DEFAULT_GAP_TOL, RESAMPLE_ATTEMPTS  # noqa: E402
from eddeg.empiric import match_points, multistart  # noqa: E402
from eddeg.errors import DegenerateInput  # noqa: E402
from eddeg.matcore.sampling import (  # noqa: E402
    derive_seed,
    random_nested_bases,
    random_rect,
    random_spd,
    random_symmetric,
)
from eddeg.models import (  # noqa: E402
    FlagSpec,
    GrassmannSpec,
    SchubertSpec,
    StiefelSpec,
    adapted_frame,
)
from eddeg.models.base import ModelSpec  # noqa: E402
from eddeg.stationary import (  # noqa: E402
    PREDICATE_DISTINCT_C_VALUES,
    PREDICATE_DISTINCT_EIGENVALUES,
    check_generic,
    enumerate_stationary,
    nearest_point,
)

ScenarioOutcome = Tuple[bool, int, Dict[str, Any]]

# -----------------------------
# Utilities
# -----------------------------


def utc_now_iso() -> str:
    return dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")


def atomic_write_text(dest: Path, text: str) -> None:
    """Atomic file write: write to temp file in same directory then os.replace."""
    dest.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(dir=str(dest.parent), delete=False) as tf:
        tmp_path = Path(tf.name)
        tf.write((text + "\n").encode("utf-8"))
        tf.flush()
        os.fsync(tf.fileno())
    os.replace(str(tmp_path), str(dest))


def setup_logging(log_level: str, log_file: Optional[Path]) -> logging.Logger:
    logger = logging.getLogger("run_acceptance")
    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    logger.handlers.clear()

    fmt = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(fmt)
    ch.setLevel(logger.level)
    logger.addHandler(ch)

    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(log_file, encoding="utf-8")
        fh.setFormatter(fmt)
        fh.setLevel(logger.level)
        logger.addHandler(fh)

    return logger


@dataclasses.dataclass
class ScenarioResult:
    name: str
    ok: bool
    started_at: str
    finished_at: str
    duration_s: float
    trials: int = 0
    details: Dict[str, Any] = dataclasses.field(default_factory=dict)
    error: Optional[str] = None


def _scale(A: np.ndarray) -> float:
    return 1.0 + float(np.linalg.norm(A))


def _certify(model: ModelSpec, trials: int, seed: int, expected: int) -> Dict[str, Any]:
    report = run_certify(model, model.describe(), CertifyOptions(trials=trials, seed=seed))
    counts = [t.count_enumerated for t in report.trials]
    return {
        "ok": report.passed and all(c == expected for c in counts),
        "counts": counts,
        "max_stationarity": max(t.max_stationarity_residual for t in report.trials),
        "min_pairwise_distance": min(t.min_pairwise_distance for t in report.trials),
        "nearest_failures": sum(
            1
            for t in report.trials
            if "nearest_label" in t.failures or "nearest_matrix" in t.failures
        ),
        "failures": sorted({f for t in report.trials for f in t.failures}),
    }


def _schubert_model(frame_seed: int) -> SchubertSpec:
    U_basis, W_basis = random_nested_bases(7, 1, 5, frame_seed)
    return SchubertSpec(n=7, k=1, l=3, m=5, Q=adapted_frame(U_basis, W_basis))


# -----------------------------
# Scenario runners
# -----------------------------


def scenario_flag_count(trials: int, seed: int) -> ScenarioOutcome:
    out = _certify(FlagSpec(n=6, ks=(1, 3), bs=(2.0, 1.0, 0.0)), trials, seed, 60)
    return out.pop("ok"), trials, out


def scenario_grassmann_count(trials: int, seed: int) -> ScenarioOutcome:
    out = _certify(GrassmannSpec(n=8, k=3), trials, seed, 56)
    return out.pop("ok"), trials, out


def scenario_stiefel_b_independence(trials: int, seed: int) -> ScenarioOutcome:
    details: Dict[str, Any] = {}
    ok = True
    for b_seed in (seed + 101, seed + 202):
        B = np.array(random_spd(4, b_seed).entries)
        out = _certify(StiefelSpec(n=6, k=4, B=B), trials, seed, 16)
        ok = ok and out.pop("ok")
        details[f"B_seed_{b_seed}"] = out
    return ok, 2 * trials, details


def scenario_schubert_count(trials: int, seed: int) -> ScenarioOutcome:
    model = _schubert_model(seed)
    out = _certify(model, trials, seed, 6)
    worst_block = 0.0
    worst_grassmann = 0.0
    for t in range(1, trials + 1):
        A, spectral, _ = draw_generic_anchor(model, seed + t, RESAMPLE_ATTEMPTS, DEFAULT_GAP_TOL)
        for p in enumerate_stationary(model, A, spectral=spectral):
            worst_block = max(worst_block, model.block_residual(p.X))
            worst_grassmann = max(worst_grassmann, model.grassmann_residual(p.X))
    ok = out.pop("ok") and worst_block <= 1e-8 and worst_grassmann <= 1e-8
    out.update(max_block_residual=worst_block, max_grassmann_residual=worst_grassmann)
    return ok, trials, out


def scenario_special_cases(trials: int, seed: int) -> ScenarioOutcome:
    sphere = StiefelSpec(n=4, k=1)
    orthogonal = StiefelSpec(n=3, k=3)
    sphere_err = 0.0
    orth_err = 0.0
    ok = True
    for t in range(1, trials + 1):
        a = np.array(random_rect(4, 1, seed + t).entries)
        pts = enumerate_stationary(sphere, a)
        unit = a / np.linalg.norm(a)
        ok = ok and len(pts) == 2
        for p in pts:
            sphere_err = max(
                sphere_err, min(np.linalg.norm(p.X - unit), np.linalg.norm(p.X + unit))
            )
        A = np.array(random_rect(3, 3, seed + t).entries)
        pts = enumerate_stationary(orthogonal, A)
        ok = ok and len(pts) == 8
        for p in pts:
            orth_err = max(orth_err, float(np.linalg.norm(p.X.T @ p.X - np.eye(3))))
    ok = ok and sphere_err <= 1e-9 and orth_err <= 1e-9
    return ok, 2 * trials, {"sphere_error": sphere_err, "orthogonality_error": orth_err}


def scenario_nearest_optimality(trials: int, seed: int) -> ScenarioOutcome:
    models = {
        "flag": FlagSpec(n=6, ks=(1, 3), bs=(2.0, 1.0, 0.0)),
        "grassmann": GrassmannSpec(n=8, k=3),
        "stiefel": StiefelSpec(n=6, k=4, B=np.array(random_spd(4, seed + 101).entries)),
        "schubert": _schubert_model(seed),
    }
    details = {}
    for name, model in models.items():
        details[name] = _certify(model, trials, seed, model.degree())["nearest_failures"]
    return all(v == 0 for v in details.values()), len(models) * trials, {
        "nearest_failures": details
    }


def scenario_section_consistency(trials: int, seed: int) -> ScenarioOutcome:
    grassmann = GrassmannSpec(n=5, k=2)
    schubert = SchubertSpec(n=5, k=0, l=2, m=5)
    worst = 0.0
    for t in range(1, trials + 1):
        A = np.array(random_symmetric(5, seed + t).entries)
        diff = nearest_point(grassmann, A).X - nearest_point(schubert, A).X
        worst = max(worst, float(np.linalg.norm(diff)) / _scale(A))
    return worst <= 1e-10, trials, {"max_relative_difference": worst}


def scenario_oracle_completeness(trials: int, seed: int) -> ScenarioOutcome:
    models = {
        "Gr(1,3)": GrassmannSpec(n=3, k=1),
        "Gr(2,4)": GrassmannSpec(n=4, k=2),
        "flag(1,2|4)": FlagSpec(n=4, ks=(1, 2)),
        "V(2,3)": StiefelSpec(n=3, k=2),
    }
    details: Dict[str, Any] = {}
    ok = True
    for name, model in models.items():
        degree = model.degree()
        complete = 0
        for t in range(1, trials + 1):
            A, spectral, _ = draw_generic_anchor(model, seed + t, RESAMPLE_ATTEMPTS, DEFAULT_GAP_TOL)
            points = enumerate_stationary(model, A, spectral=spectral)
            found = multistart(model, A, 40 * degree, derive_seed(seed + t, 1 << 20))
            report = match_points(
                found.representatives, points, anchor_norm=float(np.linalg.norm(A))
            )
            complete += int(report.complete)
        rate = complete / trials
        details[name] = {"complete_trials": complete, "rate": rate}
        ok = ok and rate >= 0.95
    return ok, len(models) * trials, details


def scenario_degeneracy(trials: int, seed: int) -> ScenarioOutcome:
    details: Dict[str, Any] = {}
    try:
        check_generic(FlagSpec(n=3, ks=(1,)), np.eye(3))
        details["flag_identity"] = None
    except DegenerateInput as e:
        details["flag_identity"] = e.predicate
    try:
        check_generic(StiefelSpec(n=2, k=2, B=np.diag([1.0, 4.0])), np.diag([2.0, 1.0]))
        details["stiefel_collision"] = None
    except DegenerateInput as e:
        details["stiefel_collision"] = e.predicate
    ok = (
        details["flag_identity"] == PREDICATE_DISTINCT_EIGENVALUES
        and details["stiefel_collision"] == PREDICATE_DISTINCT_C_VALUES
    )
    return ok, 2, details


def scenario_determinism(trials: int, seed: int) -> ScenarioOutcome:
    model = GrassmannSpec(n=5, k=2)
    texts = [
        dumps_json(
            run_certify(model, model.describe(), CertifyOptions(trials=trials, seed=seed)).to_payload()
        )
        for _ in range(2)
    ]
    return texts[0] == texts[1], 2 * trials, {"report_bytes": len(texts[0])}


SCENARIOS: Dict[str, Tuple[str, Callable[[int, int], ScenarioOutcome], bool]] = {
    "1": ("count_law:flag", scenario_flag_count, False),
    "2": ("count_law:grassmann", scenario_grassmann_count, False),
    "3": ("count_law:stiefel_b_independence", scenario_stiefel_b_independence, False),
    "4": ("count_law:schubert", scenario_schubert_count, False),
    "5": ("special_cases", scenario_special_cases, False),
    "6": ("nearest_optimality", scenario_nearest_optimality, False),
    "7": ("section_consistency", scenario_section_consistency, False),
    "8": ("oracle_completeness", scenario_oracle_completeness, True),
    "9": ("degeneracy", scenario_degeneracy, False),
    "10": ("determinism", scenario_determinism, False),
}


def make_manifest(
    run_id: str, started_at: str, finished_at: str, results: List[ScenarioResult]
) -> Dict[str, Any]:
    return {
        "run_id": run_id,
        "started_at": started_at,
        "finished_at": finished_at,
        "all_ok": all(r.ok for r in results),
        "scenarios": [dataclasses.asdict(r) for r in results],
    }


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    p = argparse.ArgumentParser(
        description="Run eddeg acceptance scenarios and write a JSON manifest."
    )
    p.add_argument(
        "--scenarios",
        type=str,
        default=",".join(SCENARIOS),
        help="Comma-separated scenario numbers (default: all).",
    )
    p.add_argument(
        "--trials",
        type=int,
        default=10,
        help="Trials per deterministic scenario (default: 10).",
    )
    p.add_argument(
        "--oracle-trials",
        type=int,
        default=100,
        help="Trials per model in the oracle scenario (default: 100).",
    )
    p.add_argument("--seed", type=int, default=42, help="Base seed (default: 42).")
    p.add_argument(
        "--output-dir",
        type=Path,
        default=REPO_ROOT / "reports",
        help="Directory for the manifest (default: ./reports).",
    )
    p.add_argument(
        "--manifest-name",
        type=str,
        default="acceptance_manifest.json",
        help="Manifest file name (default: acceptance_manifest.json).",
    )
    p.add_argument(
        "--fail-fast",
        action="store_true",
        help="Stop after the first failing scenario.",
    )
    p.add_argument("--log-level", type=str, default="INFO", help="DEBUG, INFO, WARNING, ERROR.")
    p.add_argument("--log-file", type=Path, default=None, help="Optional log file path.")
    return p.parse_args(argv)


def resolve_scenarios(arg: str) -> List[str]:
    selected = [x.strip() for x in arg.split(",") if x.strip()]
    unknown = [x for x in selected if x not in SCENARIOS]
    if unknown:
        raise ValueError(f"Unknown scenarios: {unknown}. Valid: {sorted(SCENARIOS, key=int)}")
    return selected


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logger = setup_logging(args.log_level, args.log_file)

    try:
        selected = resolve_scenarios(args.scenarios)
    except ValueError as e:
        logger.error("%s", e)
        return 2

    run_id = dt.datetime.now(dt.timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    started_at = utc_now_iso()
    results: List[ScenarioResult] = []

    def run_one(name: str, fn: Callable[[int, int], ScenarioOutcome], trials: int) -> bool:
        t0 = time.time()
        s_at = utc_now_iso()
        logger.info("==> Starting: %s", name)
        try:
            ok, n, details = fn(trials, args.seed)
            results.append(
                ScenarioResult(
                    name=name,
                    ok=ok,
                    started_at=s_at,
                    finished_at=utc_now_iso(),
                    duration_s=round(time.time() - t0, 3),
                    trials=n,
                    details=details,
                )
            )
            if ok:
                logger.info("<== Passed: %s (%d trials)", name, n)
            else:
                logger.error("<== Failed: %s %s", name, details)
            return ok
        except Exception as e:
            results.append(
                ScenarioResult(
                    name=name,
                    ok=False,
                    started_at=s_at,
                    finished_at=utc_now_iso(),
                    duration_s=round(time.time() - t0, 3),
                    error=f"{type(e).__name__}: {e}",
                )
            )
            logger.exception("<== Error: %s", name)
            return False

    all_ok = True
    for key in selected:
        name, fn, is_oracle = SCENARIOS[key]
        ok = run_one(name, fn, args.oracle_trials if is_oracle else args.trials)
        all_ok = all_ok and ok
        if args.fail_fast and not ok:
            break

    manifest = make_manifest(run_id, started_at, utc_now_iso(), results)
    manifest_path = args.output_dir / args.manifest_name
    atomic_write_text(manifest_path, dumps_json(manifest))
    logger.info("Wrote manifest: %s", manifest_path)

    if not all_ok:
        logger.error("One or more scenarios failed.")
        return 1
    logger.info("Done. All scenarios passed.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
