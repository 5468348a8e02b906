import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from magicvqe._kernels import available_backends  # noqa: E402
from magicvqe.game import GameSpec  # noqa: E402
from magicvqe.simulator import prepare_bell_stack  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def spec():
    return GameSpec()


@pytest.fixture(scope="session")
def bell():
    return prepare_bell_stack()


@pytest.fixture(params=sorted(available_backends()))
def kernel(request):
    return available_backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
