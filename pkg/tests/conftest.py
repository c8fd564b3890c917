import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dqd_qrng import DeviceParams, StatisticsMode, get_preset  # noqa: E402


@pytest.fixture
def metallic():
    return get_preset("metallic").params


@pytest.fixture
def molecular():
    return get_preset("molecular-dfa").params


@pytest.fixture
def unit_device():
    return DeviceParams(gamma=1.0, t1=1e-9, statistics_mode=StatisticsMode.QUANTUM)
