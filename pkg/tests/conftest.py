import itertools

import numpy as np
import pytest

BETAS = [k * np.pi / 12 for k in range(1, 13)]
YS = [0.25, 0.5, 0.75, 1.0]
ALPHAS = [0.0, np.pi / 3, np.pi, 3 * np.pi / 2]
D33_GRID = list(itertools.product(YS, ALPHAS, BETAS))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
