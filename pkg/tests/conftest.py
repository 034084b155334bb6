import pytest

_LOG = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_LOG] = {}


@pytest.fixture
def acceptance(request):
    """Record one line per acceptance criterion; the summary prints them in order."""
    log = request.config.stash[_LOG]

    def record(number: int, ok: bool, detail: str):
        log[number] = (ok, detail)
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        ok, detail = log[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
