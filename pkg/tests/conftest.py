"""Shared fixtures; the expensive grid work runs once per session."""

from __future__ import annotations

import pytest

from uniq_regions.verify import run_suite


@pytest.fixture(scope="session")
def coverage_result():
    """Coverage suite over the three documented grids at step 1/32."""
    return run_suite("coverage")
