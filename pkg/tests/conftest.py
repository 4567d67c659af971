import numpy as np
import pytest

from etfent import frames


@pytest.fixture(scope="session")
def sic3():
    return frames.get_povm("sic-d3")


@pytest.fixture(scope="session")
def sic3_conj():
    return frames.get_povm("conj:sic-d3")


@pytest.fixture(scope="session")
def h7():
    return frames.get_povm("harmonic-7-3")


@pytest.fixture(scope="session")
def h7_conj():
    return frames.get_povm("conj:harmonic-7-3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
