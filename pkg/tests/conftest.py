import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA = []  # (criterion id, passed, detail), filled by test_acceptance
REPORTS = []  # labeled compare-and-report lines


def pytest_terminal_summary(terminalreporter):
    if REPORTS:
        terminalreporter.section("table comparison reports")
        for line in REPORTS:
            terminalreporter.write_line(line)
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for cid, ok, detail in CRITERIA:
            status = "PASS" if ok else "FAIL"
            terminalreporter.write_line(f"[{status}] {cid}" + (f" -- {detail}" if detail else ""))
