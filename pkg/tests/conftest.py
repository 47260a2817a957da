import pytest

from combolock.core import LockConfig


@pytest.fixture
def default_cfg() -> LockConfig:
    return LockConfig()
