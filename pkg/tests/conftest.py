"""Shared fixtures plus a summary hook for the acceptance suite.

Every test named test_criterion_* in test_acceptance.py is reported as
one PASS/FAIL line at the end of the run, so the acceptance status is
readable without scrolling through the full pytest output.
"""

import re

import pytest

CRITERIA = {
    1: "portrait of SIX state 1 at depth 3 matches the published tree",
    2: "connection degree of BABY is Finite(2) with certificates",
    3: "dual Aleshin decided FreeRank2; no relation up to length 6",
    4: "SIX decided InfiniteGroup through its dual's md-reduction",
    5: "16+288 census: three procedures agree, no Unknown verdicts",
    6: "finite-degree census machines grow 2^n components, powers n..n+3",
    7: "square identities on 1000+ random structured portraits",
    8: "nerode_partition matches naive partition; minimize idempotent",
    9: "md-reduction confluent on 500+ random machines",
    10: "tensor-closure laws on the finite 2x2 census machines",
    11: "6-state bireversible census completes and reports counts",
}

_acceptance_results = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not match:
        return
    num = int(match.group(1))
    if report.when == "call":
        _acceptance_results[num] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_results[num] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for num in sorted(CRITERIA):
        outcome = _acceptance_results.get(num)
        if outcome is None:
            verdict = "NOT RUN"
        elif outcome == "passed":
            verdict = "PASS"
        elif outcome == "skipped":
            verdict = "SKIP"
        else:
            verdict = "FAIL"
        tw.write_line("criterion %2d %-7s %s" % (num, verdict, CRITERIA[num]))


@pytest.fixture(scope="session")
def fixture_dir():
    import pathlib

    return pathlib.Path(__file__).resolve().parent.parent / "fixtures"
