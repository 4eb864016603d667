"""Repeat the acceptance-criterion verdict lines after the test summary.

The acceptance tests print their [criterion N] lines as they run, but
pytest's capture hides those unless -s is given; this hook replays them
uncaptured so every run ends with the full pass/fail slate.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
