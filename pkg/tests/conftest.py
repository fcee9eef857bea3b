from __future__ import annotations

import pytest

_CRITERIA: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion run by test_acceptance")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = ""
    if rep.failed:
        msg = getattr(rep.longrepr, "reprcrash", None)
        detail = msg.message.splitlines()[0] if msg is not None else "failed"
    else:
        detail = getattr(item, "criterion_detail", "")
    _CRITERIA[number] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[number]
        line = f"{status} criterion {number}: {title}"
        if detail:
            line += f" | {detail}"
        terminalreporter.write_line(line)
