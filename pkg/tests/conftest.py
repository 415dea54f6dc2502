import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d\d)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m is None or (rep.when != "call" and status != "error"):
                continue
            outcomes[(int(m.group(1)), m.group(2))] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(outcomes.items()):
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {name}")
