import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from opotl import builtin_mcall, load_word  # noqa: E402
from opotl.opa import builtin_fig5  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

WEX = "call{pA} han call{pB} call{pC} call{pC} exc call{pErr} ret{pErr} call{pErr} ret{pErr} ret{pA}"


@pytest.fixture(scope="session")
def mcall():
    return builtin_mcall()


@pytest.fixture(scope="session")
def wex(mcall):
    return load_word(mcall, WEX)


@pytest.fixture(scope="session")
def fig5():
    return builtin_fig5()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
