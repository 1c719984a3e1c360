"""Shared pytest hooks.

The acceptance module runs last so that its property-suite criterion can read
the outcomes recorded for every other test module in the same session.  A
one-line verdict per acceptance criterion is printed at the end of the run.
"""

import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

ACCEPTANCE = "test_acceptance.py"
_CRITERION = re.compile(r"test_criterion_(\d+)")

_property_outcomes: dict[str, str] = {}
_criterion_outcomes: dict[int, str] = {}


def _is_acceptance(nodeid: str) -> bool:
    return nodeid.split("::", 1)[0].endswith(ACCEPTANCE)


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda it: _is_acceptance(it.nodeid))


def pytest_runtest_logreport(report):
    if _is_acceptance(report.nodeid):
        m = _CRITERION.search(report.nodeid)
        if m and (report.when == "call" or report.failed):
            k = int(m.group(1))
            if _criterion_outcomes.get(k) != "failed":
                _criterion_outcomes[k] = report.outcome
        return
    if report.when == "call" or report.failed:
        if _property_outcomes.get(report.nodeid) != "failed":
            _property_outcomes[report.nodeid] = report.outcome


@pytest.fixture(scope="session")
def property_outcomes() -> dict[str, str]:
    """Outcomes of the non-acceptance tests that already ran in this session."""
    return _property_outcomes


def pytest_terminal_summary(terminalreporter):
    if not _criterion_outcomes:
        return
    from test_acceptance import TITLES

    terminalreporter.section("acceptance criteria")
    for k in sorted(_criterion_outcomes):
        verdict = "PASS" if _criterion_outcomes[k] == "passed" else "FAIL"
        terminalreporter.write_line(f"CRITERION {k}: {verdict} ({TITLES[k]})")
