from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
FIXTURES_DIR = TESTS_DIR.parent / "fixtures"

if str(TESTS_DIR) not in sys.path:
    sys.path.insert(0, str(TESTS_DIR))

from fnet.parser import parse_model  # noqa: E402

FIXTURE_FILES = [
    FIXTURES_DIR / "carcomfort_net.fnet",
    FIXTURES_DIR / "carcomfort_views.fnet",
]


def read_fixture_sources() -> list[tuple[str, str]]:
    return [(str(p), p.read_text(encoding="utf-8")) for p in FIXTURE_FILES]


@pytest.fixture(scope="session")
def fixture_sources() -> list[tuple[str, str]]:
    return read_fixture_sources()


@pytest.fixture(scope="session")
def fixture_model(fixture_sources):
    return parse_model(fixture_sources)
