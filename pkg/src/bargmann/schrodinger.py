"""Independent check: s-wave phase shifts of a tabulated local potential by Numerov."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import ceil, pi

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConvergenceError, DecayError
from .marchenko import LocalPotentialCurve
from .model import PhysicalConstants
from .rational import RationalSMatrix, phase_shift


@dataclass
class PhaseComparison:
    k: list
    delta_rational: list
    delta_numerov: list
    max_abs_diff: float

    def to_dict(self) -> dict:
        return asdict(self)


def _reduce(delta: float) -> float:
    """Map to (-pi/2, pi/2]."""
    d = (delta + pi / 2) % pi - pi / 2
    return d if d != -pi / 2 else pi / 2


def _numerov(f, h: float, n: int) -> np.ndarray:
    """Regular solution of u'' = f(r) u on r_i = i h, i = 0..n."""
    r = h * np.arange(n + 1)
    w = 1.0 - h * h * f(r) / 12.0
    u = np.empty(n + 1)
    u[0] = 0.0
    # u = r + f(0) r^3 / 6 + ... near the origin
    u[1] = h * (1.0 + f(np.array([0.0]))[0] * h * h / 6.0)
    for i in range(1, n):
        u[i + 1] = ((12.0 - 10.0 * w[i]) * u[i] - w[i - 1] * u[i - 1]) / w[i + 1]
    return u


def numerov_phase(curve: LocalPotentialCurve, k: float, consts: PhysicalConstants | None = None,
                  h: float | None = None, match_shift: float = 0.0, refine: bool = True,
                  decay_tol: float = 1e-6, conv_tol: float = 1e-4) -> float:
    """s-wave phase shift in (-pi/2, pi/2] for the tabulated potential.

    V is interpolated by a cubic spline (extrapolated towards r = 0) and set
    to zero beyond the last grid point.  See `numerov_phase_fn` for the
    matching and refinement.
    """
    consts = consts or curve.consts
    if abs(curve.V[-1]) > decay_tol:
        raise DecayError(f"|V(r_max = {curve.r[-1]} fm)| = {abs(curve.V[-1]):.3g} MeV exceeds {decay_tol:g} MeV")
    spline = CubicSpline(curve.r, curve.V, extrapolate=True)
    return numerov_phase_fn(spline, curve.r[-1], k, consts, h=h, match_shift=match_shift,
                            refine=refine, conv_tol=conv_tol)


def numerov_phase_fn(potential, r_max: float, k: float, consts: PhysicalConstants, h: float | None = None,
                     match_shift: float = 0.0, refine: bool = True, conv_tol: float = 1e-4) -> float:
    """Phase shift for a vectorized potential V(r) [MeV] that vanishes beyond r_max.

    The regular solution is matched to alpha sin(kr) + beta cos(kr) at
    r1 = r_max + match_shift and at r1 plus a quarter wavelength.  With
    ``refine`` the step is halved once, the two results must agree to
    ``conv_tol`` and their Richardson combination is returned.
    """
    if not k > 0:
        raise ValueError("k must be positive")
    k2 = k * k
    scale = 1.0 / consts.hbar2_over_2mu

    def f(r):
        v = np.where(r <= r_max, potential(np.minimum(r, r_max)), 0.0)
        return v * scale - k2

    def solve(step):
        i1 = ceil((r_max + match_shift) / step - 1e-9)
        i2 = i1 + max(1, round(pi / (2 * k) / step))
        u = _numerov(f, step, i2)
        r1, r2 = i1 * step, i2 * step
        m = np.array([[np.sin(k * r1), np.cos(k * r1)], [np.sin(k * r2), np.cos(k * r2)]])
        alpha, beta = np.linalg.solve(m, [u[i1], u[i2]])
        return _reduce(np.arctan2(beta, alpha))

    h = h or min(0.01, pi / (20 * k))
    d1 = solve(h)
    if not refine:
        return d1
    d2 = solve(h / 2)
    diff = _reduce(d2 - d1)
    if abs(diff) > conv_tol:
        raise ConvergenceError(f"step halving changed delta by {diff:.3g} rad at k = {k}")
    return _reduce(d2 + diff / 15.0)


def align_branches(raw, reference: float = 0.0) -> np.ndarray:
    """Shift each value by a multiple of pi to follow its predecessor."""
    out = np.empty(len(raw))
    prev = reference
    for i, d in enumerate(raw):
        out[i] = d + pi * np.round((prev - d) / pi)
        prev = out[i]
    return out


def numerov_phases(curve: LocalPotentialCurve, k_grid, consts: PhysicalConstants | None = None,
                   **kwargs) -> np.ndarray:
    """Continuous Numerov phase shifts on an increasing grid.

    The branch is fixed from threshold, where delta -> 0, by tracking a few
    auxiliary momenta below the first grid point.
    """
    k = np.asarray(k_grid, dtype=float)
    if np.any(k <= 0) or np.any(np.diff(k) <= 0):
        raise ValueError("k_grid must be positive and strictly increasing")
    aux = k[0] * np.array([0.1, 0.25, 0.5])
    raw, failures = [], []
    for i, kk in enumerate(np.concatenate([aux, k])):
        try:
            raw.append(numerov_phase(curve, kk, consts, **kwargs))
        except (ConvergenceError, DecayError) as exc:
            failures.append((i - aux.size, str(exc)))
            raw.append(np.nan)
    if failures:
        idx = [i for i, _ in failures if i >= 0]
        raise ConvergenceError(f"Numerov failed at k indices {idx}: {failures[0][1]}")
    return align_branches(raw)[aux.size:]


def compare_phases(curve: LocalPotentialCurve, rs: RationalSMatrix, k_grid,
                   consts: PhysicalConstants | None = None) -> PhaseComparison:
    k = np.asarray(k_grid, dtype=float)
    d_rat = phase_shift(rs, k)
    d_num = numerov_phases(curve, k, consts)
    diff = np.abs(np.vectorize(_reduce)(d_num - d_rat))
    return PhaseComparison(k=k.tolist(), delta_rational=d_rat.tolist(), delta_numerov=d_num.tolist(),
                           max_abs_diff=float(diff.max()))
