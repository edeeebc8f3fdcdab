import pytest

from autfn.words import standard_basis

# criterion id -> (description, passed)
ACCEPTANCE_RESULTS = {}


def record(criterion: int, description: str, passed: bool):
    ACCEPTANCE_RESULTS[criterion] = (description, passed)


@pytest.fixture
def b2():
    return standard_basis(2)


@pytest.fixture
def b3():
    return standard_basis(3)


@pytest.fixture
def b4():
    return standard_basis(4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        description, passed = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key:2d}. {description}")
