#!/usr/bin/env python3
"""
eddeg - Euclidean distance degree toolbox

How to Run:
  eddeg <degree|enumerate|nearest|certify> --model <flag|grassmann|stiefel|schubert> --n N [...]

Examples:
  # ED degree and dimension of a flag manifold
  eddeg degree --model flag --n 4 --ks 1,2

  # All stationary points for a seeded anchor, lowest objective first
  eddeg enumerate --model grassmann --n 5 --k 2 --seed 7

  # Closed-form nearest point to an anchor read from a matrix file
  eddeg nearest --model stiefel --n 3 --k 2 --B-seed 3 --anchor A.json

  # Certify 10 seeded trials with the descent oracle, report to a file
  eddeg certify --model schubert --n 7 --k 1 --l 3 --m 5 --frame-seed 1 \
      --trials 10 --oracle --output report.json

Exit codes:
  0 success, 1 certification failure, 2 invalid input or degenerate anchor,
  3 enumeration overflow, 4 nearest-point cross-check failure.
"""

from __future__ import annotations

import argparse
import logging
import logging.config
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError
from pythonjsonlogger import jsonlogger

from eddeg import __version__
from eddeg.cli.certify import CertifyOptions, run_certify, sample_anchor
from eddeg.cli.descriptor import MatrixFile, ModelDescriptor, load_anchor, read_matrix
from eddeg.cli.report import (
    dumps_csv,
    dumps_json,
    points_frame,
    trials_frame,
    write_text_atomic,
)
from eddeg.config import SEED_ENV_VAR, Settings, load_settings
from eddeg.errors import (
    EDDegreeError,
    EnumerationOverflow,
    InvalidModel,
    MalformedFile,
)
from eddeg.matcore.sampling import random_nested_bases, random_spd
from eddeg.models import adapted_frame
from eddeg.models.base import ModelSpec
from eddeg.stationary import (
    argmin_point,
    check_generic,
    enumerate_stationary,
    nearest_point,
)

logger = logging.getLogger("eddeg")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_OVERFLOW = 3
EXIT_CROSS_CHECK = 4


# -----------------------------
# Logging
# -----------------------------


def setup_logging(
    log_level: str,
    log_file: Optional[Path] = None,
    log_config: Optional[Path] = None,
) -> logging.Logger:
    """Configure the ``eddeg`` logger.

    Human-readable records go to stderr; stdout carries only payloads.
    ``log_file`` adds a JSON-lines file handler. ``log_config`` replaces
    both with a dictConfig YAML.

    Raises
    ------
    MalformedFile
        If ``log_config`` cannot be read or is not a valid dictConfig, or
        ``log_file`` cannot be opened.
    """
    if log_config is not None:
        try:
            with Path(log_config).open("r", encoding="utf-8") as f:
                logging.config.dictConfig(yaml.safe_load(f))
        except (OSError, yaml.YAMLError, ValueError, TypeError, AttributeError) as e:
            raise MalformedFile(f"cannot load logging config {log_config}: {e}") from e
        return logger

    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    logger.handlers.clear()
    logger.propagate = False

    fmt = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(fmt)
    ch.setLevel(logger.level)
    logger.addHandler(ch)

    if log_file is not None:
        try:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            fh = logging.FileHandler(log_file, encoding="utf-8")
        except OSError as e:
            raise MalformedFile(f"cannot open log file {log_file}: {e}") from e
        fh.setFormatter(
            jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
        fh.setLevel(logger.level)
        logger.addHandler(fh)

    return logger


# -----------------------------
# Arguments
# -----------------------------


def _model_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model")
    g.add_argument(
        "--model",
        required=True,
        choices=["flag", "grassmann", "stiefel", "schubert"],
        help="Model family.",
    )
    g.add_argument("--n", type=int, required=True, help="Ambient dimension.")
    g.add_argument("--k", type=int, default=None, help="Grassmann/Stiefel k, Schubert dim U.")
    g.add_argument("--ks", type=str, default=None, help="Flag dimensions, e.g. 1,3.")
    g.add_argument("--l", type=int, default=None, help="Schubert subspace dimension.")
    g.add_argument("--m", type=int, default=None, help="Schubert dim W.")
    g.add_argument("--bs", type=str, default=None, help="Flag eigenvalues b_0..b_p, e.g. 2,1,0.")
    g.add_argument("--a-val", dest="a", type=float, default=None, help="Grassmann/Schubert a.")
    g.add_argument("--b-val", dest="b", type=float, default=None, help="Grassmann/Schubert b.")
    g.add_argument("--B-file", dest="B_file", type=Path, default=None, help="Stiefel B as a matrix file.")
    g.add_argument("--B-seed", dest="B_seed", type=int, default=None, help="Seeded positive definite B.")
    g.add_argument("--Q-file", dest="Q_file", type=Path, default=None, help="Schubert adapted frame.")
    g.add_argument(
        "--frame-seed",
        type=int,
        default=None,
        help="Adapted frame of a seeded random nested pair U <= W.",
    )

    o = p.add_argument_group("runtime")
    o.add_argument("--config", type=Path, default=None, help="Settings YAML (default: $EDDEG_CONFIG).")
    o.add_argument("--output", type=Path, default=None, help="Write the payload here instead of stdout.")
    o.add_argument("--format", choices=["json", "csv"], default="json", help="Payload format.")
    o.add_argument("--log-level", default="INFO", help="DEBUG, INFO, WARNING, ERROR.")
    o.add_argument("--log-file", type=Path, default=None, help="Optional JSON log file.")
    o.add_argument("--log-config", type=Path, default=None, help="logging dictConfig YAML.")
    return p


def _anchor_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("anchor")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--anchor", type=Path, default=None, help="Anchor matrix file.")
    src.add_argument("--seed", type=int, default=None, help="Seed for a Gaussian anchor.")
    g.add_argument("--tol-gap", type=float, default=None, help="Genericity gap tolerance.")
    g.add_argument("--tol-mem", type=float, default=None, help="Membership tolerance.")
    g.add_argument("--tol-stat", type=float, default=None, help="Stationarity tolerance.")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eddeg",
        description="ED degrees and stationary points of flag, Grassmann, Stiefel and Schubert models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    model = _model_parent()
    anchor = _anchor_parent()

    sub.add_parser("degree", parents=[model], help="Print the ED degree and dimension.")
    sub.add_parser("enumerate", parents=[model, anchor], help="List every stationary point.")
    sub.add_parser("nearest", parents=[model, anchor], help="Closed-form nearest point.")

    c = sub.add_parser("certify", parents=[model, anchor], help="Certify seeded trials.")
    c.add_argument("--trials", type=int, default=None, help="Number of seeded trials (default: 1).")
    c.add_argument("--oracle", action="store_true", help="Run the multistart descent oracle.")
    c.add_argument("--starts", type=int, default=None, help="Oracle starts (default: 40 x degree).")
    c.add_argument("--progress", action="store_true", help="Show progress bars on stderr.")
    return parser


# -----------------------------
# Resolution helpers
# -----------------------------


def build_descriptor(args: argparse.Namespace) -> ModelDescriptor:
    """Model descriptor from parsed arguments, with seeded B / Q expanded.

    Raises
    ------
    InvalidModel
        On conflicting or incomplete options.
    MalformedFile
        If a matrix file cannot be read.
    """
    if args.B_file is not None and args.B_seed is not None:
        raise InvalidModel("--B-file and --B-seed are mutually exclusive")
    if args.Q_file is not None and args.frame_seed is not None:
        raise InvalidModel("--Q-file and --frame-seed are mutually exclusive")

    B = None
    if args.B_file is not None:
        B = read_matrix(args.B_file).tolist()
    elif args.B_seed is not None:
        if not args.k:
            raise InvalidModel("--B-seed needs --k >= 1")
        B = np.array(random_spd(args.k, args.B_seed).entries).tolist()

    Q = None
    if args.Q_file is not None:
        Q = read_matrix(args.Q_file).tolist()
    elif args.frame_seed is not None:
        if args.k is None or args.m is None:
            raise InvalidModel("--frame-seed needs --k and --m")
        U_basis, W_basis = random_nested_bases(args.n, args.k, args.m, args.frame_seed)
        Q = adapted_frame(U_basis, W_basis).tolist()

    try:
        return ModelDescriptor(
            model=args.model,
            n=args.n,
            k=args.k,
            ks=args.ks,
            l=args.l,
            m=args.m,
            bs=args.bs,
            a=args.a,
            b=args.b,
            B=B,
            Q=Q,
        )
    except ValidationError as e:
        raise InvalidModel(f"invalid model descriptor: {e}") from e


def resolve_settings(args: argparse.Namespace) -> Settings:
    """Settings file plus command-line tolerance overrides."""
    try:
        settings = load_settings(args.config)
    except FileNotFoundError as e:
        raise MalformedFile(f"settings file not found: {e}") from e
    except (ValidationError, yaml.YAMLError) as e:
        raise MalformedFile(f"invalid settings file: {e}") from e

    overrides: Dict[str, float] = {}
    for flag, name in (("tol_gap", "gap"), ("tol_mem", "membership"), ("tol_stat", "stationarity")):
        value = getattr(args, flag, None)
        if value is not None:
            if value <= 0:
                raise InvalidModel(f"--{flag.replace('_', '-')} must be positive, got {value}")
            overrides[name] = value
    if overrides:
        settings = settings.model_copy(
            update={"tolerances": settings.tolerances.model_copy(update=overrides)}
        )
    return settings


def resolve_seed(args: argparse.Namespace, settings: Settings) -> int:
    """$EDDEG_SEED, then --seed, then the settings default."""
    env = os.environ.get(SEED_ENV_VAR, "").strip()
    if env:
        try:
            return int(env)
        except ValueError as e:
            raise InvalidModel(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from e
    seed = getattr(args, "seed", None)
    return settings.seed if seed is None else seed


def resolve_anchor(args: argparse.Namespace, model: ModelSpec, seed: int) -> np.ndarray:
    if args.anchor is not None:
        logger.info("Reading anchor from %s", args.anchor)
        return load_anchor(args.anchor, model)
    logger.info("Sampling anchor with seed %d", seed)
    return sample_anchor(model, seed)


def emit(text: str, output: Optional[Path]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_text_atomic(output, text)


# -----------------------------
# Commands
# -----------------------------


def cmd_degree(args: argparse.Namespace, model: ModelSpec, settings: Settings) -> int:
    payload = {
        "model": model.kind,
        "ed_degree": model.ed_degree(cap=settings.enumeration_cap),
        "dimension": model.dimension(),
    }
    if args.format == "csv":
        emit(dumps_csv(pd.DataFrame([payload])), args.output)
    else:
        emit(dumps_json(payload), args.output)
    return EXIT_OK


def _point_record(point: Any) -> Dict[str, Any]:
    return {
        "label": point.label_text,
        "objective": point.objective,
        "grad_residual": point.grad_residual,
        "matrix": MatrixFile.from_array(point.X).model_dump(),
    }


def cmd_enumerate(args: argparse.Namespace, model: ModelSpec, settings: Settings) -> int:
    A = resolve_anchor(args, model, resolve_seed(args, settings))
    points = enumerate_stationary(
        model, A, tol=settings.tolerances.gap, cap=settings.enumeration_cap
    )
    records = [_point_record(p) for p in sorted(points, key=lambda p: p.objective)]
    logger.info("Enumerated %d stationary points", len(records))
    if args.format == "csv":
        emit(dumps_csv(points_frame(records)), args.output)
    else:
        emit(dumps_json(records), args.output)
    return EXIT_OK


def cmd_nearest(args: argparse.Namespace, model: ModelSpec, settings: Settings) -> int:
    tol = settings.tolerances
    A = resolve_anchor(args, model, resolve_seed(args, settings))
    spectral = check_generic(model, A, tol=tol.gap)
    nearest = nearest_point(model, A, tol=tol.gap, spectral=spectral)

    points = enumerate_stationary(
        model, A, tol=tol.gap, cap=settings.enumeration_cap, spectral=spectral
    )
    best = argmin_point(points)
    distance = float(np.linalg.norm(nearest.X - best.X))
    if best.label_text != nearest.label_text or distance > tol.nearest * (
        1.0 + float(np.linalg.norm(A))
    ):
        logger.error(
            "Nearest point %s disagrees with the enumeration argmin %s (distance %.3e)",
            nearest.label_text,
            best.label_text,
            distance,
        )
        return EXIT_CROSS_CHECK

    payload = {
        "matrix": MatrixFile.from_array(nearest.X).model_dump(),
        "objective": nearest.objective,
        "label": nearest.label_text,
    }
    if args.format == "csv":
        emit(dumps_csv(points_frame([{**payload, "grad_residual": nearest.grad_residual}])), args.output)
    else:
        emit(dumps_json(payload), args.output)
    return EXIT_OK


def cmd_certify(
    args: argparse.Namespace,
    model: ModelSpec,
    settings: Settings,
    descriptor: ModelDescriptor,
) -> int:
    anchor = None
    if args.anchor is not None:
        if args.trials is not None:
            raise InvalidModel("--trials cannot be combined with --anchor; a file anchor runs one trial")
        anchor = load_anchor(args.anchor, model)
    options = CertifyOptions(
        trials=1 if args.trials is None else args.trials,
        seed=resolve_seed(args, settings),
        oracle=args.oracle,
        starts=args.starts,
        settings=settings,
        progress=args.progress,
    )
    if options.trials < 1:
        raise InvalidModel(f"--trials must be >= 1, got {options.trials}")
    if options.starts is not None and options.starts < 1:
        raise InvalidModel(f"--starts must be >= 1, got {options.starts}")

    report = run_certify(model, descriptor.echo(), options, anchor=anchor)
    if args.format == "csv":
        emit(dumps_csv(trials_frame(report)), args.output)
    else:
        emit(dumps_json(report.to_payload()), args.output)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# -----------------------------
# Entry point
# -----------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(list(argv) if argv is not None else None)

    try:
        setup_logging(args.log_level, args.log_file, args.log_config)
        logger.debug("eddeg %s: %s", __version__, args.command)
        settings = resolve_settings(args)
        descriptor = build_descriptor(args)
        model = descriptor.to_handle()
        if args.command == "degree":
            return cmd_degree(args, model, settings)
        if args.command == "enumerate":
            return cmd_enumerate(args, model, settings)
        if args.command == "nearest":
            return cmd_nearest(args, model, settings)
        return cmd_certify(args, model, settings, descriptor)
    except EnumerationOverflow as e:
        logger.error("Enumeration overflow: %s", e)
        return EXIT_OVERFLOW
    except EDDegreeError as e:
        predicate = getattr(e, "predicate", None)
        if predicate is not None:
            logger.error("%s (predicate: %s)", e, predicate)
        else:
            logger.error("%s: %s", type(e).__name__, e)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
