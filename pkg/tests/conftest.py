import itertools
import math

import pytest


def brute_theta(vectors_in_box, max_norm):
    """Count squared norms of explicitly listed vectors (an oracle independent of enumeration)."""
    counts = {}
    for v in vectors_in_box:
        N = sum(x * x for x in v)
        if N <= max_norm:
            counts[N] = counts.get(N, 0) + 1
    return counts


@pytest.fixture
def box():
    def _box(n, r):
        return itertools.product(range(-r, r + 1), repeat=n)

    return _box


@pytest.fixture
def q1():
    return math.exp(-math.pi)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::")[-1]
                num = int(name.split("_")[2])
                lines.append((num, f"criterion {num:2d} {'PASS' if status == 'passed' else 'FAIL'}  {name}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
