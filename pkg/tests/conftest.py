import numpy as np
import pytest
from hypothesis import settings

from agpd.curve import hermitian, normtrace
from agpd.field import field_for_tower
from agpd.pdset import prepare_hermitian, prepare_normtrace

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F16():
    return field_for_tower(4, 2)


@pytest.fixture(scope="session")
def F27():
    return field_for_tower(3, 3)


@pytest.fixture(scope="session")
def herm3_g5():
    return prepare_hermitian(3, 5)


@pytest.fixture(scope="session")
def herm2_g3():
    return prepare_hermitian(2, 3)


@pytest.fixture(scope="session")
def nt23_g17():
    return prepare_normtrace(normtrace(2, 3), 17)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
