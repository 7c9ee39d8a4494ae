import numpy as np
import pytest
from hypothesis import strategies as st

from quantions import Quantion

_LOG_KEY = pytest.StashKey[list]()


def random_quantion(rng: np.random.Generator, scale: float = 1.0) -> Quantion:
    re, im = rng.standard_normal((2, 4)) * scale
    return Quantion(*(re + 1j * im))


def matrix_of(q: Quantion) -> np.ndarray:
    # independent of Quantion.matrix: layout written out by hand
    return np.array([[q.a, q.c], [q.b, q.d]], dtype=complex)


finite = st.floats(min_value=-8, max_value=8, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
quantions = st.builds(Quantion, complexes, complexes, complexes, complexes)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.stash[_LOG_KEY] = []


@pytest.fixture
def acceptance_log(request):
    """Append ``(criterion, ok, detail)``; printed in the terminal summary."""
    return request.config.stash[_LOG_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LOG_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(lines, key=lambda x: x[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
