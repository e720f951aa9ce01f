"""Bargmann potentials phase-equivalent to Laguerre-basis separable potentials."""
from .marchenko import LocalPotentialCurve, MarchenkoKernel, kernel_coeffs, local_potential, solve_marchenko
from .model import (CALIBRATED_HBAR2_OVER_2MU, DEFAULT_HBAR2_OVER_2MU, ModelPotential, PhysicalConstants,
                    SpectralData, fredholm_det, fredholm_det_spectral, from_yamaguchi)
from .pipeline import bargmann_from_model, bargmann_from_spectral, reconstruct
from .rational import RationalSMatrix, extract_bargmann, numerator_polynomial, phase_shift, smatrix_eval
from .schrodinger import compare_phases, numerov_phase

__version__ = "0.1.0"
