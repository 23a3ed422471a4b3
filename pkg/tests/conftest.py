import random

import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()

from helpers import FA, make_mass, on_a, simple_table


@pytest.fixture
def fixture_table():
    return simple_table(0.8, 0.5)


@pytest.fixture
def incoming():
    return make_mass(FA, {on_a("1"): 0.3, on_a("0"): 0.2})


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
