import numpy as np
import pytest

from bargmann.marchenko import default_r_grid, kernel_coeffs, local_potential
from bargmann.model import CALIBRATED_HBAR2_OVER_2MU, PhysicalConstants, SpectralData, from_yamaguchi
from bargmann.pipeline import bargmann_from_model, bargmann_from_spectral

YAMA_B = 1.158023
YAMA_LAMBDA0 = -76.4294
YAMA_A = np.array([2.276012669, 0.040033331])

TABLE_B = 1.3
TABLE_LAMBDA = [0.07258480091, 0.6661380111, 3.203427534, 37.0]
TABLE_Z = [0.1493428930, 0.4054072736, 0.6619688746, 0.6124857973]
TABLE_A = np.array([
    3.552401289 + 7.346450796j, 3.552401289 - 7.346450796j,
    0.8278500631 + 1.088427930j, 0.8278500631 - 1.088427930j,
    0.5554972974 + 0.5089227378j, 0.5554972974 - 0.5089227378j,
    0.4847238917, 0.04377880951,
])

CALIBRATED = PhysicalConstants(CALIBRATED_HBAR2_OVER_2MU)


@pytest.fixture(scope="session")
def consts():
    return CALIBRATED


@pytest.fixture(scope="session")
def yamaguchi_pot():
    return from_yamaguchi(YAMA_LAMBDA0, YAMA_B, CALIBRATED)


@pytest.fixture(scope="session")
def yamaguchi_rs(yamaguchi_pot):
    return bargmann_from_model(yamaguchi_pot)


@pytest.fixture(scope="session")
def table_sd():
    return SpectralData(ell=0, b=TABLE_B, lam=TABLE_LAMBDA, z_last=TABLE_Z, sum_tol=1e-6)


@pytest.fixture(scope="session")
def table_rs(table_sd):
    return bargmann_from_spectral(table_sd)


@pytest.fixture(scope="session")
def yamaguchi_curve(yamaguchi_rs):
    return local_potential(kernel_coeffs(yamaguchi_rs), default_r_grid(), CALIBRATED)


@pytest.fixture(scope="session")
def table_curve(table_rs):
    return local_potential(kernel_coeffs(table_rs), default_r_grid(), CALIBRATED)


ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    """Store a PASS/FAIL line shown in the terminal summary."""
    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
