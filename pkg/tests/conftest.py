import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cmradar.reference import chirp_reference  # noqa: E402
from cmradar.scene import Clutter, Scene  # noqa: E402


def make_standard_scene(num_tx=4, num_samples=16):
    return Scene(
        num_tx=num_tx,
        num_rx=8,
        num_samples=num_samples,
        target_angle=math.radians(15.0),
        target_power_ratio=10.0,
        clutters=tuple(Clutter(math.radians(a), 1000.0) for a in (-50.0, -10.0, 40.0)),
    )


@pytest.fixture
def standard_scene():
    return make_standard_scene()


@pytest.fixture
def chirp():
    return chirp_reference(4, 16).vector


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_cm(rng, n):
    return np.exp(2j * np.pi * rng.random(n)) / math.sqrt(n)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
