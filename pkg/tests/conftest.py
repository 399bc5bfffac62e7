import pytest


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def close():
    def check(a, b, tol):
        assert abs(a - b) <= tol * max(1.0, abs(b)), (a, b)
    return check


# criterion lines recorded by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
