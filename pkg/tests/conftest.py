import pytest

ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """``criterion(n, passed, detail)`` records one acceptance line."""
    table = request.config.stash[ACCEPTANCE]

    def record(n, passed, detail=""):
        table[n] = (passed, detail)
        print(f"CRITERION {n}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = config.stash[ACCEPTANCE]
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(table):
        passed, detail = table[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())
