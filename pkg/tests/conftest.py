from __future__ import annotations

import pytest

# criterion number -> (title, list of (test id, outcome))
_CRITERIA: dict[int, tuple[str, list[tuple[str, str]]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n, title = marker.args
        _CRITERIA.setdefault(n, (title, []))[1].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        ok = all(o == "passed" for _, o in results)
        tr.write_line(f"AC{n} {'PASS' if ok else 'FAIL'}  {title}")
        for name, o in results:
            if o != "passed":
                tr.write_line(f"      {o}: {name}")
