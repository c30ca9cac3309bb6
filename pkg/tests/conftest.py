import pytest
from hypothesis import settings

from pkrkit.syntax import KnowledgeBase, parse_formula

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def f():
    """Shorthand formula parser."""
    return parse_formula


@pytest.fixture
def kb():
    def make(*formulas, atoms=()):
        return KnowledgeBase.of(*formulas, atoms=atoms)
    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
