import pytest

from fermat4.workspace import get_workspace

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ws73():
    return get_workspace("f73")


@pytest.fixture(scope="session")
def wsq():
    return get_workspace("exact")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
