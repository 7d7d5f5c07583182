from __future__ import annotations

import pytest

from acyclic_bounds import kernels

_criteria: dict[int, dict] = {}


@pytest.fixture(params=kernels.AVAILABLE)
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    num, label = marker.args
    entry = _criteria.setdefault(num, {"label": label, "ok": True, "notes": []})
    entry["ok"] = entry["ok"] and rep.passed
    entry["notes"].extend(v for k, v in item.user_properties if k == "summary")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] else "FAIL"
        note = f" | {'; '.join(e['notes'])}" if e["notes"] else ""
        terminalreporter.write_line(f"{status} criterion {num:2d}: {e['label']}{note}")
