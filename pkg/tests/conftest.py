import math
from pathlib import Path

import pytest

from growthent.hyperinflation import HyperinflationParams

WEIMAR = HyperinflationParams(lambda1=0.1001, v0=math.log(10), t_star=23, lambda2=0.112)


def write_csv(path: Path, rows, header: str | None = "period,value") -> Path:
    lines = [header] if header else []
    lines += [f"{p},{v!r}" if isinstance(v, float) else f"{p},{v}" for p, v in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def series_rows(ts):
    return list(zip(ts.labels(), ts.values))


@pytest.fixture
def weimar():
    return WEIMAR


# one summary line per acceptance criterion, aggregated over parametrized cases
_criteria: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test checks")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = dict(report.user_properties).get("criterion")
        if label:
            _criteria.setdefault(label, []).append(report.outcome)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
        outcomes = _criteria[label]
        if "failed" in outcomes:
            status = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"{status}  {label}")
