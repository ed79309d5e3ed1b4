import mpmath as mp
import pytest

from qlommel.qseries import QContext


@pytest.fixture
def ctx():
    return QContext(0.5)


@pytest.fixture(autouse=True)
def _mp_precision():
    with mp.workdps(40):
        yield
