import os
import re
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    match = re.match(r"test_criterion_(\d+)_", item.name)
    if not match or (rep.when != "call" and rep.passed):
        return
    num = int(match.group(1))
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    prev_ok = _CRITERIA.get(num, (doc, True))[1]
    _CRITERIA[num] = (doc, prev_ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        doc, ok = _CRITERIA[num]
        terminalreporter.write_line(f"ACCEPTANCE criterion {num}: {'PASS' if ok else 'FAIL'}  {doc}")
