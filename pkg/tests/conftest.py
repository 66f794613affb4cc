from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

from scarfres import example

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def lat():
    return example.lattice()


@pytest.fixture(scope="session")
def A():
    return example.lambda_set()


def brute_fiber(u, moves_lattice, target):
    """Nonnegative ``v`` with ``u.v = u.target`` and ``v - target`` in the lattice, by box scan."""
    val = sum(a * b for a, b in zip(u, target))
    ranges = [range(val // w + 1) for w in u]
    return sorted(
        v for v in itertools.product(*ranges)
        if sum(a * b for a, b in zip(u, v)) == val
        and moves_lattice.contains(tuple(a - b for a, b in zip(v, target)))
    )


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
