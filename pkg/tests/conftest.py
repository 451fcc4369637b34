import sys

import pytest
from hypothesis import settings

from tropical_trace.catalog import catalog

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

@pytest.fixture(scope="session")
def u23():
    return catalog("uniform:2:3")


def pytest_terminal_summary(terminalreporter):
    # test_acceptance records one (ok, detail) per criterion
    results = {}
    for mod in list(sys.modules.values()):
        results.update(getattr(mod, "ACCEPTANCE_RESULTS", {}))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, detail = results[num]
        terminalreporter.write_line("criterion %2d: %s  %s" % (num, "PASS" if ok else "FAIL", detail))
