import pytest
from hypothesis import settings

from rotxfmr.circuits import CouplingParams
from rotxfmr.geometry import MaterialSpec, WindingSpec, large_design, small_design

# same examples on every run, so a green suite stays green
settings.register_profile("repo", derandomize=True)
settings.load_profile("repo")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def small():
    return small_design()


@pytest.fixture
def large():
    return large_design()


@pytest.fixture
def w99():
    return WindingSpec(N_s=99, N_r=99)


@pytest.fixture
def ferrite():
    return MaterialSpec(mu_r=2000)


@pytest.fixture
def small_coupling():
    # published FEA parameters, axial small-size
    return CouplingParams(l_ss=3.322e-3, l_rr=3.348e-3, m=2.968e-3)


@pytest.fixture
def large_coupling():
    return CouplingParams(l_ss=4.693, l_rr=4.695, m=4.625)
