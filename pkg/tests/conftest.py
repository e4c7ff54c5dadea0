from __future__ import annotations

import pathlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

REPO = pathlib.Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> pathlib.Path:
    return CORPUS


def corpus_files(sub: str):
    return sorted((CORPUS / sub).glob("*.vm"))


def load(sub: str, name: str):
    from vmosaic.textform import parse_mosaic_file

    return parse_mosaic_file(CORPUS / sub / f"{name}.vm")


@pytest.fixture(scope="session")
def cabled_sweep2():
    """The full 2-mosaic sweep with cabled fingerprints (shared: it is the
    expensive half of the acceptance suite)."""
    from vmosaic.search import SweepConfig, sweep

    return sweep(SweepConfig(2, with_cable=True, budget=5_000_000))


@pytest.fixture(scope="session")
def plain_sweep2():
    from vmosaic.search import SweepConfig, sweep

    return sweep(SweepConfig(2))
