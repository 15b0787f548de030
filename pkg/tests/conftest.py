import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def brute_plank(weights, tol):
    """Pure-Python count over itertools.product; shares no code with the engine."""
    inside = boundary = outside = 0
    for signs in itertools.product((1, -1), repeat=len(weights)):
        a = abs(sum(e * w for e, w in zip(signs, weights)))
        if a < 1 - tol:
            inside += 1
        elif a > 1 + tol:
            outside += 1
        else:
            boundary += 1
    return inside, boundary, outside


def brute_exact(b):
    """Same tallies for integer b with rational arithmetic on s / |b|."""
    norm_sq = sum(x * x for x in b)
    inside = boundary = outside = strict = closed = 0
    for signs in itertools.product((1, -1), repeat=len(b)):
        s = sum(e * x for e, x in zip(signs, b))
        r = Fraction(s * s, norm_sq)
        inside += r < 1
        boundary += r == 1
        outside += r > 1
        strict += s > 0 and r > 1
        closed += s > 0 and r >= 1
    return {"inside": inside, "boundary": boundary, "outside": outside,
            "strict": strict, "closed": closed}


@pytest.fixture
def sqrt2():
    return 1 / math.sqrt(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
