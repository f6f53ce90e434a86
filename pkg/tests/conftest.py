"""Shared pytest fixtures for hkq tests."""

from pathlib import Path

import pytest

from hkq.arrangement import Arrangement, fixture
from hkq.hyperpolygon import PolygonSpec, polygon_fixture


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    """Isolated directory for report files. Never writes into the working tree."""
    return tmp_path / "reports"


# ── Bundled arrangements ───────────────────────────────────────────────────────
# All load from hkq/data/*.json through importlib.resources.


@pytest.fixture
def four_lines() -> Arrangement:
    """Four lines in the plane: two parallel verticals, a horizontal and a diagonal."""
    return fixture("four_lines")


@pytest.fixture
def four_lines_flipped() -> Arrangement:
    """four_lines with the second hyperplane cooriented the other way."""
    return fixture("four_lines_flipped")


@pytest.fixture
def four_lines_moved() -> Arrangement:
    """four_lines's normals with offsets (0, 1, 1, 0)."""
    return fixture("four_lines_moved")


@pytest.fixture
def triangle() -> Arrangement:
    """Three lines bounding the standard triangle."""
    return fixture("triangle")


@pytest.fixture
def segment() -> Arrangement:
    """Two points on a line, bounding [0, 1]."""
    return fixture("segment")


# ── Bundled polygons ───────────────────────────────────────────────────────────


@pytest.fixture
def polygon_11333() -> PolygonSpec:
    """Five edges with lengths (1, 1, 3, 3, 3)."""
    return polygon_fixture("polygon_11333")


@pytest.fixture
def polygon_2348() -> PolygonSpec:
    """Four edges with lengths (2, 3, 4, 8)."""
    return polygon_fixture("polygon_2348")
