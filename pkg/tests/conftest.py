import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from centrax import fixtures  # noqa: E402


@pytest.fixture(autouse=True)
def _default_caps(monkeypatch):
    monkeypatch.delenv("CENTRAX_CAP", raising=False)


@pytest.fixture(scope="session")
def catalog():
    return fixtures.algebras()


@pytest.fixture(scope="session")
def homs():
    return fixtures.homomorphisms()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
