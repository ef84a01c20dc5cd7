import os
import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, after the normal summary."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome != "error":
                continue
            m = re.search(r"test_acceptance\.py::test_criterion_(\w+?)_(\w+)", rep.nodeid)
            if m:
                lines.append((m.group(1), m.group(2).replace("_", " "),
                              "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, title, status in sorted(lines):
            terminalreporter.write_line(f"criterion {num} ({title}): {status}")
