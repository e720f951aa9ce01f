import numpy as np
import pytest

from bargmann.errors import DecayError
from bargmann.marchenko import LocalPotentialCurve, default_r_grid
from bargmann.model import PhysicalConstants
from bargmann.pipeline import reconstruct
from bargmann.rational import RationalSMatrix, phase_shift, scattering_length, threshold_scattering_length
from bargmann.schrodinger import align_branches, compare_phases, numerov_phase, numerov_phase_fn, numerov_phases

from oracles import square_well_phase

C = PhysicalConstants(41.47)


def test_zero_potential_gives_zero_phase():
    curve = LocalPotentialCurve(r=np.linspace(0.1, 5, 50), V=np.zeros(50), consts=C)
    for k in [0.1, 1.0, 3.0]:
        assert abs(numerov_phase(curve, k)) < 1e-7


@pytest.mark.parametrize("k", [0.2, 0.7, 1.5, 3.0])
def test_square_well_matches_analytic(k):
    depth_mev, R = 30.0, 2.0

    def V(r):
        # midpoint value at the step keeps the scheme second order there
        return np.where(r < R, -depth_mev, np.where(r == R, -depth_mev / 2, 0.0))

    d = numerov_phase_fn(V, R, k, C, h=R / 400)
    assert abs(d - square_well_phase(k, depth_mev / C.hbar2_over_2mu, R)) < 1e-5


def test_yamaguchi_single_momentum(yamaguchi_rs, yamaguchi_curve):
    d = numerov_phase(yamaguchi_curve, 0.5)
    assert abs(d - phase_shift(yamaguchi_rs, [0.5])[0]) < 2e-3


def test_step_halving_stable(table_curve):
    d1 = numerov_phase(table_curve, 1.2, refine=False)
    d2 = numerov_phase(table_curve, 1.2, h=0.005, refine=False)
    assert abs(d1 - d2) < 1e-5


def test_matching_radius_independent(table_curve):
    d1 = numerov_phase(table_curve, 0.8)
    d2 = numerov_phase(table_curve, 0.8, match_shift=2.0)
    assert abs(d1 - d2) < 1e-5


def test_unit_smatrix_curve_gives_zero_phase():
    curve = reconstruct(RationalSMatrix(b=1.0, a=[1.0, 1.0]), C, default_r_grid(n=60))
    assert abs(numerov_phase(curve, 0.9)) < 1e-6


def test_rejects_undecayed_potential():
    curve = LocalPotentialCurve(r=np.linspace(0.1, 5, 50), V=np.full(50, -1.0), consts=C)
    with pytest.raises(DecayError):
        numerov_phase(curve, 1.0)
    with pytest.raises(ValueError):
        numerov_phase_fn(lambda r: 0 * r, 1.0, 0.0, C)


def test_align_branches():
    out = align_branches([0.1, 0.2 - np.pi, 0.3])
    assert np.allclose(out, [0.1, 0.2, 0.3])


def test_phases_continuous_and_scattering_length(yamaguchi_rs, yamaguchi_curve):
    k = np.linspace(0.004, 0.024, 6)
    d = numerov_phases(yamaguchi_curve, k)
    a_fit = threshold_scattering_length(k, d)
    assert a_fit == pytest.approx(scattering_length(yamaguchi_rs), rel=1e-2)


def test_compare_phases_report(yamaguchi_rs, yamaguchi_curve):
    pc = compare_phases(yamaguchi_curve, yamaguchi_rs, np.linspace(0.05, 3.0, 10))
    rep = pc.to_dict()
    assert set(rep) == {"k", "delta_rational", "delta_numerov", "max_abs_diff"}
    assert rep["max_abs_diff"] < 2e-3
