import re
import sys

sys.setrecursionlimit(20000)

_criteria: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion\[criterion_(\d+)\]", report.nodeid)
    if m and (report.when == "call" or report.outcome != "passed"):
        _criteria[int(m.group(1))] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n:2d}: {_criteria[n]}")
