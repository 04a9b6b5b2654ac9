import re

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m:
        _ACCEPTANCE[int(m.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        outcome = _ACCEPTANCE[n]
        word = "PASS" if outcome == "passed" else "FAIL"
        tw.write_line("criterion %d: %s" % (n, word))
