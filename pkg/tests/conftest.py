import sys

import pytest

from kummer_verify.curves import build_standard_configuration


@pytest.fixture(scope="session")
def cfg():
    return build_standard_configuration()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number][1])
