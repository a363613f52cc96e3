import numpy as np
import pytest

from detboot import DiscreteDistribution


@pytest.fixture
def coin():
    return DiscreteDistribution.from_atoms([0.0, 1.0], [0.5, 0.5])


@pytest.fixture
def uniform_sample():
    """An n=20 sample drawn uniformly from [0, 19], like the published example."""
    return np.random.default_rng(20190326).uniform(0.0, 19.0, size=20)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_RESULTS

    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}: {detail}")
