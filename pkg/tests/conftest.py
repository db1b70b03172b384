import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> [title, all parts passed so far, notes]
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = mark.args
        entry = _CRITERIA.setdefault(number, [title, True, []])
        entry[1] = entry[1] and rep.passed
        entry[2].extend(getattr(item, "acceptance_notes", []))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, notes = _CRITERIA[number]
        detail = f"  ({'; '.join(notes)})" if notes else ""
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}{detail}")
