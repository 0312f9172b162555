import pytest

_LOG = {}
_OUTCOMES = {}


@pytest.fixture
def acceptance_log():
    return _LOG


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_acceptance[" in report.nodeid and report.when == "call":
        cid = report.nodeid.rsplit("[", 1)[1].rstrip("]")
        _OUTCOMES[cid] = (report.passed, report.longreprtext.strip().splitlines()[-1:] if report.failed else [])


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_OUTCOMES):
        ok, tail = _OUTCOMES[cid]
        desc, detail = _LOG.get(cid, ("", ""))
        if ok:
            terminalreporter.write_line(f"{cid} PASS  {desc}: {detail}")
        else:
            terminalreporter.write_line(f"{cid} FAIL  {' '.join(tail)}")
