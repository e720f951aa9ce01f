"""Glue from separable models to Bargmann parameters and local potentials."""
from __future__ import annotations

from functools import partial

from .marchenko import LocalPotentialCurve, default_r_grid, kernel_coeffs, local_potential
from .model import ModelPotential, PhysicalConstants, SpectralData, fredholm_det, fredholm_det_spectral
from .rational import RationalSMatrix, extract_bargmann, numerator_polynomial


def bargmann_from_model(pot: ModelPotential) -> RationalSMatrix:
    """Bargmann parameters via the direct determinant det(I - G0 V)."""
    poly = numerator_polynomial(partial(fredholm_det, pot), pot.script_N, pot.b)
    return extract_bargmann(poly, pot.b, ell=pot.ell)


def bargmann_from_spectral(sd: SpectralData) -> RationalSMatrix:
    """Bargmann parameters via the closed spectral form of D+(k)."""
    poly = numerator_polynomial(partial(fredholm_det_spectral, sd), sd.script_N, sd.b)
    return extract_bargmann(poly, sd.b, ell=sd.ell)


def reconstruct(rs: RationalSMatrix, consts: PhysicalConstants = PhysicalConstants(),
                r_grid=None) -> LocalPotentialCurve:
    r_grid = default_r_grid() if r_grid is None else r_grid
    return local_potential(kernel_coeffs(rs), r_grid, consts)
