# collect the PASS/FAIL criterion lines so they show up even without -s
_lines = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        _lines.extend(l for l in report.capstdout.splitlines() if l.startswith(("PASS criterion", "FAIL criterion")))


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in _lines:
            terminalreporter.write_line(line)
