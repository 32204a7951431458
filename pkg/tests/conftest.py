import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fracdim.digit_sets import DigitSetSpec, Schedule, validate_spec  # noqa: E402


def random_params(rng, count=2, max_den=20):
    """Rationals in (0, 1) with denominators <= max_den."""
    out = []
    for _ in range(count):
        q = rng.randint(2, max_den)
        out.append(Fraction(rng.randint(1, q - 1), q))
    return out


@pytest.fixture
def demo_spec():
    return validate_spec(DigitSetSpec(Schedule.recurrence(5), "1/2", "1/4"), 7)


@pytest.fixture
def demo_t():
    return validate_spec(DigitSetSpec(Schedule.recurrence(5), "1/4", "1/3"), 7)


@pytest.fixture
def rng():
    return random.Random(1234)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE]

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
