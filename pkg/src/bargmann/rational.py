"""Rational (Bargmann) parametrization of the S-matrix and Jost function.

The Jost function is F(k) = prod_j (k + i a_j) / (k + ib)^M with M = 2(N + l)
and S(k) = F(-k)/F(k).  Parameters a_j come from the roots of the numerator
polynomial R_M(k) = D+(k) (k + ib)^M: each root k_j gives a_j = i k_j.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BoundStateError, InterpolationError, InvariantError, PoleError


@dataclass(frozen=True, eq=False)
class MonicPolynomial:
    """Polynomial with coefficients in descending powers, leading term 1."""

    coeffs: np.ndarray
    lead_tol: float = 1e-10

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise ValueError("empty coefficient list")
        if abs(c[0] - 1.0) > self.lead_tol:
            raise InvariantError(f"leading coefficient {c[0]} is not 1 within {self.lead_tol:g}")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, k):
        return np.polyval(self.coeffs, k)

    def derivative(self, k):
        return np.polyval(np.polyder(self.coeffs), k)


@dataclass(frozen=True, eq=False)
class RationalSMatrix:
    """Bargmann parameters {a_j} (fm^-1) and basis scale b."""

    b: float
    a: np.ndarray
    ell: int = 0

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex).ravel()
        if not self.b > 0:
            raise ValueError("b must be positive")
        object.__setattr__(self, "a", a)

    @property
    def script_N(self) -> int:
        return self.a.size

    @property
    def rank(self) -> int:
        return self.script_N // 2 - self.ell

    def numerator_coeffs(self) -> np.ndarray:
        """Coefficients of prod_j (x + a_j) in x = -ik; real for a valid set."""
        return np.poly(-self.a)


def chebyshev_nodes(n: int, lo: float, hi: float, kind: int = 1) -> np.ndarray:
    j = np.arange(n)
    t = np.cos(np.pi * (j + 0.5) / n) if kind == 1 else np.cos(np.pi * (j + 1) / (n + 1))
    return np.sort(0.5 * (lo + hi) + 0.5 * (hi - lo) * t)


def cayley_nodes(script_N: int, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Unit-circle nodes u_m and the real k_m = b (1 - i u)/(u - i) they map to.

    Under u = i (k - ib)/(k + ib) the real k axis becomes the unit circle and
    D+(k) becomes a polynomial of degree M in u, so uniformly spaced u give a
    perfectly conditioned (FFT) interpolation.  Half of the 2(M+1) nodes have
    k > 0; the rest are their mirror images k -> -k.
    """
    L = 2 * (script_N + 1)
    u = np.exp(2j * np.pi * (np.arange(L) + 0.5) / L)
    k = (b * (1 - 1j * u) / (u - 1j)).real
    return u, k


def numerator_polynomial(det_evaluator: Callable[[float], complex], script_N: int, b: float,
                         resid_tol: float = 1e-8) -> MonicPolynomial:
    """Coefficients of R_M(k) = D+(k) (k+ib)^M from samples of D+ at real k > 0.

    Values at negative k follow from D+(-k) = conj(D+(k)).  A held-out set of
    Chebyshev nodes on [0.1, 2b + M] checks that the evaluator really is
    rational of degree M.
    """
    u, k = cayley_nodes(script_N, b)
    pos = k > 0
    vals = np.empty(u.size, dtype=complex)
    vals[pos] = [det_evaluator(x) for x in k[pos]]
    vals[~pos] = np.conj([det_evaluator(-x) for x in k[~pos]])
    # D+ = sum_j q_j u^j; nodes sit at half-integer angles, hence the twiddle
    q = np.fft.fft(vals) / u.size * np.exp(-1j * np.pi * np.arange(u.size) / u.size)
    alias = np.abs(q[script_N + 1:]).max() / np.abs(q).max()

    held = chebyshev_nodes(script_N, 0.1, 2.0 * b + script_N)
    uh = 1j * (held - 1j * b) / (held + 1j * b)
    pred = np.polyval(q[: script_N + 1][::-1], uh)
    resid = np.abs(pred - np.array([det_evaluator(x) for x in held])).max()
    if max(alias, resid) > resid_tol:
        raise InterpolationError(
            f"residual {max(alias, resid):.3g} exceeds {resid_tol:g}; evaluator is not rational of degree {script_N}")

    # R(k) = sum_j q_j i^j (k - ib)^j (k + ib)^(M - j)
    coeffs = np.zeros(script_N + 1, dtype=complex)
    for j in range(script_N + 1):
        term = np.polymul(np.poly(np.full(j, 1j * b)), np.poly(np.full(script_N - j, -1j * b)))
        coeffs += q[j] * 1j**j * term
    poly = MonicPolynomial(coeffs)
    return MonicPolynomial(poly.coeffs / poly.coeffs[0])


def polish_root(poly: MonicPolynomial, k0: complex, maxiter: int = 30) -> complex:
    """Newton refinement of a single root, kept only while the residual drops."""
    k, r = k0, abs(poly(k0))
    for _ in range(maxiter):
        dp = poly.derivative(k)
        if dp == 0:
            break
        k_new = k - poly(k) / dp
        r_new = abs(poly(k_new))
        if r_new >= r:
            break
        k, r = k_new, r_new
        if r == 0:
            break
    return complex(k)


def _pair_conjugates(a: np.ndarray, tol: float) -> np.ndarray:
    a = a.copy()
    scale = np.maximum(1.0, np.abs(a))
    real = np.abs(a.imag) <= tol * scale
    a[real] = a[real].real
    upper = [x for x in a[~real] if x.imag > 0]
    lower = [x for x in a[~real] if x.imag < 0]
    if len(upper) != len(lower):
        raise InvariantError(f"complex parameters are not closed under conjugation: {a[~real]}")
    out = list(a[real])
    for x in upper:
        j = int(np.argmin([abs(x - np.conj(y)) for y in lower]))
        y = lower.pop(j)
        if abs(x - np.conj(y)) > tol * max(1.0, abs(x)):
            raise InvariantError(f"unpaired complex parameter {x} (nearest conjugate {np.conj(y)})")
        m = 0.5 * (x + np.conj(y))
        out += [m, np.conj(m)]
    return np.array(out, dtype=complex)


def sort_parameters(a) -> np.ndarray:
    """Complex pairs first (by descending Re, +Im first), then reals descending."""
    a = np.asarray(a, dtype=complex)
    return np.array(sorted(a, key=lambda x: (x.imag == 0, -x.real, -x.imag)), dtype=complex)


def validate_parameters(a) -> None:
    for x in np.asarray(a, dtype=complex):
        if x.imag == 0 and x.real < 0:
            raise BoundStateError(
                f"bound-state parameter a = {x.real:.10g} fm^-1 (Jost zero at k = {-x.real:.6g}i); out of scope")
        if not x.real > 0:
            raise InvariantError(f"parameter a = {x} violates Re a > 0")


def extract_bargmann(poly: MonicPolynomial, b: float, ell: int = 0, pair_tol: float = 1e-8) -> RationalSMatrix:
    """Bargmann parameters a_j = i k_j from the roots k_j of the numerator."""
    if poly.degree % 2:
        raise InvariantError(f"numerator degree {poly.degree} is odd")
    roots = np.roots(poly.coeffs)  # companion-matrix eigenvalues
    roots = np.array([polish_root(poly, k) for k in roots])
    a = _pair_conjugates(1j * roots, pair_tol)
    validate_parameters(a)
    return RationalSMatrix(b=b, a=sort_parameters(a), ell=ell)


def trace_identity(rs: RationalSMatrix) -> tuple[float, float]:
    """(sum a_j, 2 N b); the two agree for s-wave models."""
    if rs.ell != 0:
        raise ValueError("trace identity sum a_j = 2Nb holds for l = 0 only")
    return float(np.sum(rs.a).real), 2.0 * rs.rank * rs.b


def smatrix_eval(rs: RationalSMatrix, k):
    """S(k) = ((k+ib)/(k-ib))^M prod (k - i a_j)/(k + i a_j)."""
    k = np.asarray(k, dtype=complex)
    out = ((k + 1j * rs.b) / (k - 1j * rs.b)) ** rs.script_N
    for aj in rs.a:
        out = out * (k - 1j * aj) / (k + 1j * aj)
    return out


def jost_eval(rs: RationalSMatrix, k):
    k = np.asarray(k, dtype=complex)
    if np.any(k == -1j * rs.b):
        raise PoleError("Jost function has a pole at k = -ib")
    out = np.ones_like(k)
    for aj in rs.a:
        out = out * (k + 1j * aj) / (k + 1j * rs.b)
    return out


def phase_shift(rs: RationalSMatrix, k_grid: Sequence[float]) -> np.ndarray:
    """Continuous delta(k) = arg S(k)/2 on an increasing positive grid.

    Each factor's argument is taken on a branch that cannot jump for real
    k > 0 when Re a_j > 0, so the sum is continuous and vanishes at k -> 0+
    and k -> infinity.
    """
    k = np.asarray(k_grid, dtype=float)
    if np.any(k <= 0) or np.any(np.diff(k) <= 0):
        raise ValueError("k_grid must be positive and strictly increasing")
    delta = rs.script_N * np.arctan2(rs.b, k)
    for aj in rs.a:
        delta = delta + 0.5 * (np.angle(k - 1j * aj) - np.angle(k + 1j * aj))
    return delta


def scattering_length(rs: RationalSMatrix) -> float:
    """s-wave scattering length from the slope of delta at threshold."""
    return float(rs.script_N / rs.b - np.sum(1.0 / rs.a).real)


def threshold_scattering_length(k, delta, npts: int = 6) -> float:
    """Extrapolate -tan(delta)/k to k = 0 with a quadratic in k^2."""
    k = np.asarray(k, dtype=float)[:npts]
    y = -np.tan(np.asarray(delta, dtype=float)[:npts]) / k
    return float(np.polyval(np.polyfit(k * k, y, 2), 0.0))
