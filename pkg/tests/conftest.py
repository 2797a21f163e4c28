import numpy as np
import pytest
from hypothesis import strategies as st

from rsp_coherence.noise import rho_noise
from rsp_coherence.protocol import epr_psi_minus
from rsp_coherence.qmat import random_density

ACCEPTANCE_LINES = []


@pytest.fixture
def psi():
    return epr_psi_minus()


@pytest.fixture
def noisy():
    return rho_noise()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


phases = st.floats(0, 2 * np.pi, allow_nan=False)


@st.composite
def two_qubit_states(draw):
    seed = draw(st.integers(0, 2**63 - 1))
    return random_density(np.random.default_rng(seed))


@st.composite
def qubit_states(draw):
    seed = draw(st.integers(0, 2**63 - 1))
    return random_density(np.random.default_rng(seed), dim=2, max_rank=2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Log one acceptance line, then fail the test if the check did not hold."""

    def _record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _record
