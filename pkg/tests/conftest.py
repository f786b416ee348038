import numpy as np
import pytest

from cdzero import parse_element


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def p():
    """Parse element text at a fixed level: ``p("e1 + e2", 3)``."""
    return parse_element


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
