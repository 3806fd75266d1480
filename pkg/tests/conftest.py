"""Shared fixtures for the eddeg test suite."""

import json
import logging

import numpy as np
import pytest

from eddeg.matcore.sampling import random_nested_bases, random_rect, random_spd, random_symmetric
from eddeg.models import (
    FlagSpec,
    GrassmannSpec,
    SchubertSpec,
    StiefelSpec,
    adapted_frame,
)


@pytest.fixture
def sym_anchor():
    """Factory for seeded symmetric Gaussian anchors."""

    def _make(n, seed=0):
        return np.array(random_symmetric(n, seed).entries)

    return _make


@pytest.fixture
def rect_anchor():
    """Factory for seeded n x k Gaussian anchors."""

    def _make(n, k, seed=0):
        return np.array(random_rect(n, k, seed).entries)

    return _make


@pytest.fixture
def spd():
    def _make(k, seed=0):
        return np.array(random_spd(k, seed).entries)

    return _make


@pytest.fixture
def schubert_frame():
    """Adapted frame of a seeded nested pair (dim U = k, dim W = m)."""

    def _make(n, k, m, seed=0):
        U_basis, W_basis = random_nested_bases(n, k, m, seed)
        return adapted_frame(U_basis, W_basis)

    return _make


@pytest.fixture
def model_zoo(spd, schubert_frame):
    """One instance of every model family with its expected ED degree."""
    return [
        (FlagSpec(n=4, ks=(1, 2)), 12),
        (FlagSpec(n=5, ks=(2, 3), bs=(3.0, -1.0, 0.5)), 30),
        (GrassmannSpec(n=5, k=2), 10),
        (GrassmannSpec(n=4, k=1, a=2.0, b=-1.0), 4),
        (StiefelSpec(n=4, k=2, B=spd(2, seed=3)), 4),
        (StiefelSpec(n=3, k=3), 8),
        (SchubertSpec(n=7, k=1, l=3, m=5, Q=schubert_frame(7, 1, 5, seed=1)), 6),
        (SchubertSpec(n=6, k=1, l=2, m=4), 3),
    ]


@pytest.fixture
def write_matrix(tmp_path):
    """Write a matrix file {"rows","cols","data"} and return its path."""

    def _write(name, M):
        arr = np.asarray(M, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        path = tmp_path / name
        path.write_text(
            json.dumps({"rows": arr.shape[0], "cols": arr.shape[1], "data": arr.ravel().tolist()}),
            encoding="utf-8",
        )
        return path

    return _write


@pytest.fixture(autouse=True)
def reset_cli_logger(monkeypatch):
    """Undo the CLI's logger setup and keep the environment free of eddeg overrides."""
    monkeypatch.delenv("EDDEG_SEED", raising=False)
    monkeypatch.delenv("EDDEG_CONFIG", raising=False)
    yield
    root = logging.getLogger("eddeg")
    root.handlers.clear()
    root.propagate = True
    root.setLevel(logging.NOTSET)
