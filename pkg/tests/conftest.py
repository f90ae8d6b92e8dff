"""Shared fixtures and the per-criterion summary printed at the end of a run."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "invariant table for twelve fields, p = 3",
    2: "fundamental units match the published coordinates",
    3: "structure of T for eighteen discriminants and m = 1714",
    4: "p = 11 scan up to 3*10^5 returns exactly four fields",
    5: "class-order proportions for m = 72262 within 0.02",
    6: "delta proportions of l-units, principal stratum, within 0.02",
    7: "exact structural zeroes of delta for r = 3 and r = 9",
    8: "relation survey ratios for m = 7249, reproducible per seed",
    9: "oracle suites: norms, Pell, class groups, Fermat quotients",
    10: "T order = 3^(v(h)+delta) = ambiguous class limit on 50 fields",
}

_results: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _results.setdefault(crit, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        outs = _results.get(n)
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status:7s} {CRITERIA[n]}")
