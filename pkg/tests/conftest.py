import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lagrange_puiseux.branches import RSpec  # noqa: E402
from lagrange_puiseux.rng import SplitMix64, random_rspec  # noqa: E402

CRITERIA_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion, then assert it."""

    def record(number, text, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
        if detail:
            line += f" ({detail})"
        CRITERIA_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)


def random_specs(seed, count, deg_min, deg_max, bound=3):
    rng = SplitMix64(seed)
    return [random_rspec(rng, deg_min, deg_max, bound) for _ in range(count)]


@pytest.fixture
def make_specs():
    return random_specs


@pytest.fixture
def R():
    return lambda *coeffs, root=None: RSpec(tuple(coeffs), root)
