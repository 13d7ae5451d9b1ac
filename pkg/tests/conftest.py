from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pcv.scalar import GaussianRational, normalize


def rand_exact(rng: random.Random, bound: int = 9):
    while True:
        x = normalize(GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                                       Fraction(rng.randint(-bound, bound), rng.randint(1, bound))))
        if x != 0:
            return x


@pytest.fixture
def rng():
    return random.Random(20240917)


# acceptance criteria report one PASS/FAIL line each, shown whether or not
# output capture is on
_CRITERIA = {}


@pytest.fixture
def criterion():
    def record(n: int, title: str, checks):
        """checks: list of (label, ok, detail)."""
        failed = [f"{label} ({detail})" if detail else label for label, ok, detail in checks if not ok]
        line = f"criterion {n}: {'FAIL' if failed else 'PASS'}  {title}"
        if failed:
            line += "  failed: " + "; ".join(failed)
        _CRITERIA[n] = line
        print(line)
        assert not failed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
