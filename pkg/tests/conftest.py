import math

import numpy as np
import pytest

# Filled by tests/test_acceptance.py; echoed at the end of the run.
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20181)


def random_strategy_arrays(rng, n):
    """``n`` uniform draws of (theta_a, phi_a, theta_b, phi_b)."""
    return (rng.uniform(0, math.pi, n), rng.uniform(0, math.pi / 2, n),
            rng.uniform(0, math.pi, n), rng.uniform(0, math.pi / 2, n))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
