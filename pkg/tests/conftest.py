import numpy as np
import pytest

from zeno_repeater.chain import ChainConfig, run_chain


@pytest.fixture
def rng():
    return np.random.default_rng(20221)


@pytest.fixture(scope="session")
def chain9():
    return run_chain(ChainConfig(stations=9))


@pytest.fixture(scope="session")
def chain100():
    return run_chain(ChainConfig(stations=100))


_acceptance_lines = []


def record_acceptance(line: str):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
