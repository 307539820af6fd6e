import pytest

# criterion number -> (description, passed)
CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion; several tests may
    contribute to one criterion and all of them must pass."""

    def record(k: int, name: str, passed: bool):
        prev = CRITERIA.get(k, (name, True))
        CRITERIA[k] = (prev[0], prev[1] and bool(passed))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        name, ok = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {name}")
