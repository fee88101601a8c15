import pytest

from lscat import generators

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def library():
    return generators.library()


@pytest.fixture
def P4():
    return generators.pseudocircle()


@pytest.fixture
def C3():
    return generators.chain(3)


@pytest.fixture
def A2():
    return generators.antichain(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
