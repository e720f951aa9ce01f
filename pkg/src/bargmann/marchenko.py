"""s-wave Marchenko inversion for a rational S-matrix without bound states.

With S(k) = ((k+ib)/(k-ib))^M prod (k - i a_j)/(k + i a_j) the only pole in
the upper half plane is the order-M pole at k = ib, so the input kernel

    Q(t) = -i Res_{k=ib} S(k) exp(ikt) = exp(-bt) sum_m A_m t^m

is degenerate and the equation K(r,r') + Q(r+r') + int_r^inf K(r,s) Q(s+r') ds = 0
reduces to an M x M linear system at every radius.  V(r) = -2 dK(r,r)/dr.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .errors import ConvergenceError, SingularSystemError
from .model import PhysicalConstants
from .rational import RationalSMatrix


@dataclass(frozen=True, eq=False)
class MarchenkoKernel:
    b: float
    A: np.ndarray

    @property
    def script_N(self) -> int:
        return self.A.size


@dataclass(frozen=True, eq=False)
class LocalPotentialCurve:
    r: np.ndarray  # fm
    V: np.ndarray  # MeV
    consts: PhysicalConstants

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        V = np.asarray(self.V, dtype=float)
        if r.shape != V.shape or r.ndim != 1:
            raise ValueError("r and V must be 1-d arrays of equal length")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ValueError("r grid must be positive and strictly increasing")
        if not np.all(np.isfinite(V)):
            raise ValueError("potential contains non-finite values")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "V", V)


# -- truncated Taylor series, coefficient arrays in ascending powers ---------

def series_mul(p: np.ndarray, q: np.ndarray, order: int) -> np.ndarray:
    return np.convolve(p, q)[:order]


def series_recip_linear(c: complex, order: int) -> np.ndarray:
    """Series of 1/(c + u) to the given number of terms."""
    return (-1.0) ** np.arange(order) / c ** (np.arange(order) + 1)


def kernel_coeffs(rs: RationalSMatrix, imag_tol: float = 1e-10) -> MarchenkoKernel:
    """A_m from the Taylor coefficients of g(k) = (k - ib)^M S(k) about k = ib.

    In u = k - ib: g = (u + 2ib)^M prod (u + i(b - a_j)) / (u + i(b + a_j)).
    A factor with a_j = b is exactly u, so the S = 1 case yields A = 0 with
    no special handling.
    """
    if rs.ell != 0:
        raise ValueError("Marchenko reconstruction is implemented for l = 0 only")
    M, b = rs.script_N, rs.b
    g = np.zeros(M, dtype=complex)
    g[0] = 1.0
    for _ in range(M):
        g = series_mul(g, np.array([2j * b, 1.0]), M)
    for aj in rs.a:
        g = series_mul(g, np.array([1j * (b - aj), 1.0]), M)
        g = series_mul(g, series_recip_linear(1j * (b + aj), M), M)
    A = np.array([-(1j ** (m + 1)) * g[M - 1 - m] / factorial(m) for m in range(M)])
    scale = max(np.abs(A).max(), np.finfo(float).tiny)
    if np.abs(A.imag).max() > imag_tol * scale:
        raise ValueError(f"kernel coefficients are not real (max |Im A| = {np.abs(A.imag).max():.3g})")
    return MarchenkoKernel(b=b, A=A.real.copy())


def q_of_t(mk: MarchenkoKernel, t):
    t = np.asarray(t, dtype=float)
    return np.exp(-mk.b * t) * np.polyval(mk.A[::-1], t)


def _q1(mk: MarchenkoKernel, r: float) -> np.ndarray:
    return r ** np.arange(mk.script_N) * np.exp(-mk.b * r)


def _q2(mk: MarchenkoKernel, r: float) -> np.ndarray:
    M = mk.script_N
    out = np.array([sum(mk.A[m] * comb(m, n) * r ** (m - n) for m in range(n, M)) for n in range(M)])
    return out * np.exp(-mk.b * r)


def q_kernel(mk: MarchenkoKernel, r: float, rprime: float) -> float:
    """Q(r, r') as the separable sum of M products."""
    return float(_q1(mk, r) @ _q2(mk, rprime))


def moment_integral(p: int, b: float, r: float) -> float:
    """int_r^inf s^p exp(-2bs) ds by upward recurrence."""
    return float(moment_integrals(p, b, r)[p])


def moment_integrals(pmax: int, b: float, r: float) -> np.ndarray:
    out = np.empty(pmax + 1)
    e = np.exp(-2.0 * b * r)
    out[0] = e / (2.0 * b)
    for p in range(1, pmax + 1):
        out[p] = (r**p * e + p * out[p - 1]) / (2.0 * b)
    return out


def _system(mk: MarchenkoKernel, r: float) -> np.ndarray:
    """I + M(r), M_nm = int_r^inf Q1_n(s) Q2_m(s) ds."""
    M = mk.script_N
    I = moment_integrals(2 * M - 2, mk.b, r)
    mat = np.eye(M)
    for n in range(M):
        for m in range(M):
            mat[n, m] += sum(mk.A[p] * comb(p, m) * I[n + p - m] for p in range(m, M))
    return mat


def marchenko_coefficients(mk: MarchenkoKernel, r: float) -> np.ndarray:
    """c(r) with K(r, r') = sum_n c_n(r) Q2_n(r')."""
    mat = _system(mk, r)
    try:
        c = np.linalg.solve(mat, -_q1(mk, r))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"Marchenko system singular at r = {r}") from exc
    if np.linalg.cond(mat) > 1e13:
        raise SingularSystemError(f"Marchenko system ill-conditioned at r = {r}")
    return c


def solve_marchenko(mk: MarchenkoKernel, r: float) -> float:
    """K(r, r) from the degenerate-kernel linear system."""
    if not r > 0:
        raise ValueError("r must be positive")
    return float(marchenko_coefficients(mk, r) @ _q2(mk, r))


def kernel_diagonal_derivative(mk: MarchenkoKernel, r: float) -> float:
    """d K(r,r)/dr by differentiating the linear system exactly."""
    M, b = mk.script_N, mk.b
    mat = _system(mk, r)
    q1, q2 = _q1(mk, r), _q2(mk, r)
    c = np.linalg.solve(mat, -q1)
    n = np.arange(M)
    dq1 = (n * r ** np.maximum(n - 1, 0) - b * r**n) * np.exp(-b * r)
    dq2 = -b * q2 + np.exp(-b * r) * np.array(
        [sum(mk.A[m] * comb(m, k) * (m - k) * r ** (m - k - 1) for m in range(k + 1, M)) for k in range(M)])
    dmat = -np.outer(q1, q2)
    dc = np.linalg.solve(mat, -dq1 - dmat @ c)
    return float(dc @ q2 + c @ dq2)


def _fd4(f, x: float, h: float) -> float:
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def default_r_grid(r_min: float = 0.02, r_max: float = 15.0, n: int = 600, r_split: float = 1.0) -> np.ndarray:
    """Log spacing below r_split, linear above."""
    n_log = n // 3
    inner = np.geomspace(r_min, r_split, n_log, endpoint=False)
    outer = np.linspace(r_split, r_max, n - n_log)
    return np.concatenate([inner, outer])


def local_potential(mk: MarchenkoKernel, r_grid, consts: PhysicalConstants = PhysicalConstants(),
                    method: str = "fd", rtol: float = 1e-6) -> LocalPotentialCurve:
    """V(r) = -2 (hbar^2/2mu) dK(r,r)/dr on the grid, in MeV.

    ``method="fd"`` uses fourth-order central differences at h and h/2
    combined by one Richardson step; the two levels must agree to ``rtol``
    (relative to the local |dK/dr| or the curve maximum).  ``"analytic"``
    differentiates the linear system directly.
    """
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise ValueError("r grid must be positive and strictly increasing")
    if not np.any(mk.A):
        return LocalPotentialCurve(r=r, V=np.zeros_like(r), consts=consts)

    def K(x):
        return solve_marchenko(mk, x)

    dK = np.empty_like(r)
    if method == "analytic":
        dK[:] = [kernel_diagonal_derivative(mk, x) for x in r]
    elif method == "fd":
        spacing = np.diff(r, prepend=r[0] if r.size == 1 else 2 * r[0] - r[1])
        spacing[0] = spacing[1] if r.size > 1 else 1.0
        est = np.empty_like(r)
        for i, x in enumerate(r):
            h = min(1e-3, spacing[i] / 10, x / 4)
            d1, d2 = _fd4(K, x, h), _fd4(K, x, h / 2)
            dK[i] = (16 * d2 - d1) / 15
            est[i] = abs(d2 - d1)
        bad = est > rtol * np.maximum(np.abs(dK), np.abs(dK).max() * 1e-3)
        if np.any(bad):
            idx = np.flatnonzero(bad)
            raise ConvergenceError(f"finite-difference derivative did not converge at r = {r[idx][:5]} fm")
    else:
        raise ValueError(f"unknown derivative method {method!r}")
    return LocalPotentialCurve(r=r, V=-2.0 * consts.hbar2_over_2mu * dK, consts=consts)
