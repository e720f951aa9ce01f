import numpy as np
import pytest
from scipy.integrate import quad

from bargmann.marchenko import (MarchenkoKernel, LocalPotentialCurve, default_r_grid, kernel_coeffs,
                                kernel_diagonal_derivative, local_potential, moment_integral, q_kernel, q_of_t,
                                series_mul, series_recip_linear, solve_marchenko)
from bargmann.model import PhysicalConstants
from bargmann.rational import RationalSMatrix

from oracles import contour_A, contour_q, nystrom_diagonal

RADII = [0.05, 0.1, 0.3, 0.6, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0]


def test_series_helpers():
    assert np.allclose(series_mul(np.array([1, 1]), np.array([1, -1]), 3), [1, 0, -1])
    s = series_recip_linear(2.0, 5)
    assert np.allclose(series_mul(s, np.array([2.0, 1.0]), 5), [1, 0, 0, 0, 0])


def test_unit_smatrix_gives_zero_kernel():
    mk = kernel_coeffs(RationalSMatrix(b=1.2, a=[1.2, 1.2, 1.2, 1.2]))
    assert np.all(mk.A == 0)
    assert solve_marchenko(mk, 0.5) == 0
    curve = local_potential(mk, [0.1, 0.5, 1.0])
    assert np.all(curve.V == 0)


def test_two_parameter_residue_closed_form():
    # M = 2: Q(t) = -i d/dk [(k-ib)^2 S e^{ikt}] at k = ib, differentiated by hand
    b, a1, a2 = 1.1, 2.0, 0.3
    rs = RationalSMatrix(b=b, a=[a1, a2])
    mk = kernel_coeffs(rs)
    g0 = (2j * b) ** 2 * (b - a1) * (b - a2) / ((b + a1) * (b + a2))
    dlog = 2 / (2j * b) + sum(1 / (1j * (b - a)) - 1 / (1j * (b + a)) for a in (a1, a2))
    # -i [g' + i t g] e^{-bt}  ->  A_0 = -i g', A_1 = g
    assert mk.A[0] == pytest.approx((-1j * g0 * dlog).real, rel=1e-13)
    assert mk.A[1] == pytest.approx(g0.real, rel=1e-13)


@pytest.mark.parametrize("name", ["yamaguchi_rs", "table_rs"])
def test_kernel_coefficients_match_contour(name, request):
    rs = request.getfixturevalue(name)
    A = kernel_coeffs(rs).A
    ref = contour_A(rs)
    assert np.abs(ref.imag).max() < 1e-8 * np.abs(ref).max()
    assert np.allclose(A, ref.real, rtol=1e-8, atol=1e-8 * np.abs(A).max())


@pytest.mark.parametrize("name", ["yamaguchi_rs", "table_rs"])
def test_q_matches_contour_residue(name, request):
    rs = request.getfixturevalue(name)
    mk = kernel_coeffs(rs)
    for t in [1.0, 2.0, 5.0]:
        assert q_of_t(mk, t) == pytest.approx(contour_q(rs, t), rel=1e-8, abs=1e-12)


def test_q_kernel_separable_and_symmetric(table_rs):
    mk = kernel_coeffs(table_rs)
    for r, rp in [(0.3, 1.7), (2.0, 0.5), (1.0, 1.0)]:
        assert q_kernel(mk, r, rp) == pytest.approx(q_of_t(mk, r + rp), rel=1e-11)
        assert q_kernel(mk, r, rp) == pytest.approx(q_kernel(mk, rp, r), rel=1e-11)


def test_moment_integrals():
    b = 1.3
    assert moment_integral(0, b, 0.0) == pytest.approx(1 / (2 * b), rel=1e-15)
    assert moment_integral(1, b, 0.0) == pytest.approx(1 / (4 * b * b), rel=1e-15)
    ref = quad(lambda s: s**5 * np.exp(-2 * 1.3 * s), 0.7, np.inf, epsabs=0, epsrel=1e-13)[0]
    assert moment_integral(5, 1.3, 0.7) == pytest.approx(ref, rel=1e-12)


def test_kernel_decays(table_rs):
    mk = kernel_coeffs(table_rs)
    assert abs(solve_marchenko(mk, 30.0)) < 1e-15
    with pytest.raises(ValueError):
        solve_marchenko(mk, 0.0)


@pytest.mark.parametrize("name", ["yamaguchi_rs", "table_rs"])
def test_kernel_diagonal_matches_nystrom(name, request):
    rs = request.getfixturevalue(name)
    mk = kernel_coeffs(rs)
    for r in RADII:
        ref = nystrom_diagonal(lambda t: q_of_t(mk, t), rs.b, r)
        assert solve_marchenko(mk, r) == pytest.approx(ref, rel=1e-6)


def test_fd_and_analytic_derivatives_agree(table_rs):
    mk = kernel_coeffs(table_rs)
    r = np.array([0.05, 0.2, 1.0, 4.0, 9.0])
    fd = local_potential(mk, r, method="fd").V
    an = local_potential(mk, r, method="analytic").V
    assert np.allclose(fd, an, rtol=1e-6, atol=1e-6 * np.abs(an).max())
    assert kernel_diagonal_derivative(mk, 1.0) == pytest.approx(-an[2] / (2 * 41.47), rel=1e-12)


def test_local_potential_validation(table_rs):
    mk = kernel_coeffs(table_rs)
    with pytest.raises(ValueError):
        local_potential(mk, [0.5, 0.2])
    with pytest.raises(ValueError):
        local_potential(mk, [0.5], method="spline")


def test_curve_validation():
    with pytest.raises(ValueError):
        LocalPotentialCurve(r=[0.1, 0.2], V=[0.0, np.nan], consts=PhysicalConstants())
    with pytest.raises(ValueError):
        LocalPotentialCurve(r=[0.1], V=[0.0, 1.0], consts=PhysicalConstants())


def test_default_grid():
    r = default_r_grid()
    assert r.size == 600 and r[0] == 0.02 and r[-1] == 15.0 and np.all(np.diff(r) > 0)


def test_higher_partial_waves_rejected():
    with pytest.raises(ValueError):
        kernel_coeffs(RationalSMatrix(b=1.0, a=[1.0, 1.0, 1.0, 1.0], ell=1))


def test_potential_features(yamaguchi_curve, table_curve):
    # rank-1: attractive well near 1 fm; rank-4: deep attraction at short range
    i1 = np.argmin(np.abs(yamaguchi_curve.r - 1.0))
    assert -30 < yamaguchi_curve.V[i1] < -20
    assert table_curve.V[0] < -5000
    assert abs(table_curve.V[-1]) < 1e-6


def test_marchenko_kernel_dataclass():
    mk = MarchenkoKernel(b=1.0, A=np.array([1.0, 2.0]))
    assert mk.script_N == 2
