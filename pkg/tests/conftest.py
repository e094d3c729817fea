import numpy as np
import pytest

from cantorsi.construction import RadiiSchedule, build_hierarchy
from cantorsi.measure import LevelMeasure


@pytest.fixture(scope="session")
def tree2():
    return build_hierarchy(RadiiSchedule((128, 128)))


@pytest.fixture(scope="session")
def tree3():
    return build_hierarchy(RadiiSchedule((128, 128, 128)))


@pytest.fixture(scope="session")
def mu2(tree2):
    return LevelMeasure(tree2)


@pytest.fixture(scope="session")
def mu3(tree3):
    return LevelMeasure(tree3)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
