"""Shared fixtures: plane and quadrangle construction is deterministic, so
expensive structures are built once per session and reused."""

import os

import pytest

from geomdim.geometry import affine_plane, biaffine_plane, projective_plane, w_q

RUN_LONG = os.environ.get("GEOMDIM_LONG") == "1"

long_test = pytest.mark.skipif(
    not RUN_LONG, reason="long-running search; set GEOMDIM_LONG=1 to enable"
)


@pytest.fixture(scope="session")
def planes():
    """(kind, q) -> (Incidence, PlaneContext) cache."""
    cache = {}

    def get(kind, q):
        key = (kind, q)
        if key not in cache:
            builder = {"projective": projective_plane, "affine": affine_plane, "biaffine": biaffine_plane}[kind]
            cache[key] = builder(q)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def symplectic():
    """q -> SymplecticSpace cache."""
    cache = {}

    def get(q):
        if q not in cache:
            cache[q] = w_q(q)
        return cache[q]

    return get
