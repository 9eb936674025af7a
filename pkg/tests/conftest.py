import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def toy():
    """Four points on a line in two tight pairs."""
    from ncvalid.core import Dataset, Partition

    return Dataset([0.0, 1.0, 10.0, 11.0]), Partition([0, 0, 1, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one pass/fail line per acceptance criterion, printed after the run

_CRITERIA: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    num, title = crit
    entry = _CRITERIA.setdefault(num, {"title": title, "outcomes": [], "details": []})
    if report.when == "call" or report.outcome != "passed":
        entry["outcomes"].append(report.outcome)
    detail = dict(report.user_properties).get("detail")
    if detail and report.when == "call":
        entry["details"].append(detail)


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        entry = _CRITERIA[num]
        outs = entry["outcomes"]
        if outs and all(o == "skipped" for o in outs):
            verdict = "SKIP"
        elif outs and all(o in ("passed", "skipped") for o in outs):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        line = f"criterion {num:>2} {verdict:<4} {entry['title']}"
        if entry["details"]:
            line += "  [" + "; ".join(entry["details"]) + "]"
        terminalreporter.write_line(line)
