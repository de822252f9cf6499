import os

import pytest

from eqhodge.complexes import betti_vector
from eqhodge.fixtures import (
    FIXTURES_ENV,
    corpus,
    fixture_path,
    normalized_index_function,
    s3_fixture,
    seam_cochain,
)


def test_corpus_names(full_corpus):
    names = [fx.name for fx in full_corpus]
    assert names == [
        "cycle(3)_z2", "cycle(3)_z3", "cycle(3)_z4", "cycle(3)_z5",
        "cycle(3)_z6", "rp2_z2", "torus_z2", "torus_z3", "torus_z4",
        "torus_z5", "torus_z6", "klein_bottle_z2", "s3_graph",
    ]


def test_corpus_covers_connected(full_corpus):
    for fx in full_corpus:
        assert betti_vector(fx.cover.total)[0] == 1, fx.name


def test_normalized_index_function_injective():
    fx = s3_fixture()
    f = normalized_index_function(fx.base)
    assert len(set(f)) == len(f)
    assert max(f) < 1.0


def test_seam_cochain_closed(torus, klein_bottle):
    seam_cochain(torus).check_closed(torus)
    seam_cochain(klein_bottle).check_closed(klein_bottle)


def test_fixture_path_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv(FIXTURES_ENV, str(tmp_path))
    assert fixture_path("rp2.json") == tmp_path / "rp2.json"
    monkeypatch.delenv(FIXTURES_ENV)
    assert fixture_path("rp2.json").exists()
