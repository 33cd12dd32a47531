import os

import numpy as np
import pytest

from dcwav import load_gray

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

PHOTO_NAMES = ["cell", "rocket", "coffee", "hubble", "flower", "camera"]

# One line per acceptance criterion, filled in by test_acceptance.py and
# echoed after the run so the verdicts survive pytest's output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def photo_path(name):
    return os.path.join(DATA_DIR, f"{name}.pgm")


@pytest.fixture(scope="session")
def photos():
    """The six committed 256x256 grayscale crops, name -> uint8 array."""
    return {n: load_gray(photo_path(n)) for n in PHOTO_NAMES}


@pytest.fixture()
def camera(photos):
    return photos["camera"]


@pytest.fixture()
def rng():
    return np.random.default_rng(20240816)
