"""Shared fixtures for the fibolattice test suite."""

import os

os.environ.setdefault("FIBOLATTICE_ENV", "testing")

import pytest  # noqa: E402

from fibolattice.dyckpath import DyckPath  # noqa: E402
from fibolattice.intervals import Interval  # noqa: E402

# Worked examples reused across modules
SAMPLE_STEPS = "UUUUUDUDDDUDDD"
WIDE_LOWER = "UUUDUDUDDDUDUDUD"
WIDE_UPPER = "UUUUUDUDDDUDDUDD"
NARROW_LOWER = "UUUDUDDUDUDDUDUD"
NARROW_UPPER = "UUUUDUDUDDUDDUDD"


@pytest.fixture
def sample_path():
    """U^5 D (U D^3)^2, semilength 7, area 16."""
    return DyckPath.parse(SAMPLE_STEPS)


@pytest.fixture
def wide_interval():
    return Interval.parse(WIDE_LOWER, WIDE_UPPER, "inf")


@pytest.fixture
def narrow_interval():
    return Interval.parse(NARROW_LOWER, NARROW_UPPER, 2)
