import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from automanifold.datagen import (make_sphere, make_swiss_roll, simulate_fkdv,  # noqa: E402
                                  simulate_ks, simulate_sg)


@pytest.fixture(scope="session")
def fkdv():
    return simulate_fkdv()


@pytest.fixture(scope="session")
def ks():
    return simulate_ks()


@pytest.fixture(scope="session")
def sg():
    return simulate_sg()


@pytest.fixture(scope="session")
def swiss():
    return make_swiss_roll(1000, 0)


@pytest.fixture(scope="session")
def sphere():
    return make_sphere(1000, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


@pytest.fixture
def report_criterion():
    """Record the pass/fail line of one acceptance criterion."""
    def record(number, passed, detail):
        _ACCEPTANCE[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})"
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
