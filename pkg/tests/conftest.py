import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.chain import Chain  # noqa: E402
from src.config import get_settings  # noqa: E402
from src.oracle import OracleConfig  # noqa: E402
from src.two_chain import TwoChain  # noqa: E402


def loop_chain(c) -> Chain:
    """e^{2it} + c e^{3it}"""
    return Chain.from_terms([(2, 1, 1), (3, c, c)])


@pytest.fixture
def oracle_cfg():
    return OracleConfig(max_workers=2)


@pytest.fixture
def cusp_loop():
    return loop_chain(Fraction(-2, 3))


@pytest.fixture
def rose_1_6():
    return TwoChain(1, 1, 1, 6)


@pytest.fixture
def rose_1_7():
    return TwoChain(1, 1, 1, 7)


@pytest.fixture
def cardioid():
    return TwoChain(2, -1, 1, 2)


@pytest.fixture
def nephroid():
    return TwoChain(3, -1, 1, 3)


@pytest.fixture
def astroid():
    return TwoChain(3, 1, -1, 3)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    monkeypatch.setenv("CURVE_REPORT_DB", str(tmp_path / "reports.db"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
