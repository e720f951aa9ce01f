"""Rank-N separable potentials, their spectral form, and Fredholm determinants."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, pi

import numpy as np

from .errors import PoleError
from .specfun import cosine_like, hyp2f1_terminating, jmatrix, jmatrix_element, norm_psi, sine_like

# hbar^2/2mu in MeV fm^2.  DEFAULT is the generic np value; CALIBRATED is the
# value that reproduces the rank-1 a_1 = 2.276012669 fm^-1 of the Yamaguchi
# np 1S0 fit (see calibrate_yamaguchi_constant).
DEFAULT_HBAR2_OVER_2MU = 41.47
CALIBRATED_HBAR2_OVER_2MU = 41.472247
YAMAGUCHI_LAMBDA0 = -76.4294  # MeV fm^-1
YAMAGUCHI_B = 1.158023  # fm^-1
YAMAGUCHI_A1 = 2.276012669  # fm^-1


@dataclass(frozen=True)
class PhysicalConstants:
    hbar2_over_2mu: float = DEFAULT_HBAR2_OVER_2MU

    def __post_init__(self):
        if not self.hbar2_over_2mu > 0:
            raise ValueError("hbar2_over_2mu must be positive")


@dataclass(frozen=True, eq=False)
class ModelPotential:
    """Separable potential sum |phi_bar_n> V_nn' <phi_bar_n'| in fm^-2."""

    ell: int
    b: float
    V: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.V, dtype=float))
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] < 1:
            raise ValueError("V must be a non-empty square matrix")
        if not np.allclose(V, V.T, rtol=0, atol=1e-12 * max(1.0, np.abs(V).max())):
            raise ValueError("V must be symmetric")
        if self.ell < 0 or not self.b > 0:
            raise ValueError("need ell >= 0 and b > 0")
        object.__setattr__(self, "V", V)

    @property
    def N(self) -> int:
        return self.V.shape[0]

    @property
    def script_N(self) -> int:
        return 2 * (self.N + self.ell)


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigenvalues and last eigenvector row of the truncated Hamiltonian."""

    ell: int
    b: float
    lam: np.ndarray
    z_last: np.ndarray
    sum_tol: float = field(default=1e-9, repr=False)

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float).ravel()
        z = np.asarray(self.z_last, dtype=float).ravel()
        if lam.size < 1 or lam.size != z.size:
            raise ValueError("lambda and Z_last_row must be non-empty and equally long")
        if abs(np.sum(z**2) - 1.0) > self.sum_tol:
            raise ValueError(f"sum of Z_last_row^2 = {np.sum(z**2):.12g}, expected 1")
        if self.ell < 0 or not self.b > 0:
            raise ValueError("need ell >= 0 and b > 0")
        order = np.argsort(lam)
        lam, z = lam[order], z[order]
        if np.any(np.diff(lam) <= 0):
            raise ValueError("eigenvalues must be distinct")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "z_last", z)

    @property
    def N(self) -> int:
        return self.lam.size

    @property
    def script_N(self) -> int:
        return 2 * (self.N + self.ell)


def from_yamaguchi(lambda0: float, b: float, consts: PhysicalConstants = PhysicalConstants()) -> ModelPotential:
    """Rank-1 s-wave model equivalent to V(k,k') = lambda0/((k^2+b^2)(k'^2+b^2))."""
    if not b > 0:
        raise ValueError("b must be positive")
    v00 = lambda0 * pi / (8.0 * b * b) / consts.hbar2_over_2mu
    return ModelPotential(ell=0, b=b, V=np.array([[v00]]))


def calibrate_yamaguchi_constant(a1: float = YAMAGUCHI_A1, lambda0: float = YAMAGUCHI_LAMBDA0,
                                 b: float = YAMAGUCHI_B) -> float:
    """hbar^2/2mu for which the rank-1 model yields the given a_1.

    Uses the closed form a_1 = b + sqrt(2 b |V00|) for an attractive coupling.
    """
    v00 = -((a1 - b) ** 2) / (2.0 * b)
    return lambda0 * pi / (8.0 * b * b) / v00


def _transfer(N: int, ell: int, b: float) -> np.ndarray:
    # <psi_i | phi_bar_n> = d_i for n <= i, else 0
    d = np.array([norm_psi(i, ell, b) for i in range(N)])
    return np.tril(np.ones((N, N))) * d[:, None]


def hamiltonian_psi(pot: ModelPotential) -> np.ndarray:
    """Matrix of h0 + V in the orthonormal psi basis (N x N)."""
    T = _transfer(pot.N, pot.ell, pot.b)
    return T @ (pot.V + jmatrix(pot.N, pot.ell, 0.0, pot.b)) @ T.T


def spectral_data(pot: ModelPotential) -> SpectralData:
    lam, Z = np.linalg.eigh(hamiltonian_psi(pot))
    return SpectralData(ell=pot.ell, b=pot.b, lam=lam, z_last=Z[-1])


def complete_orthogonal(last_row, rng=None) -> np.ndarray:
    """Random orthogonal matrix whose last row is the given unit vector."""
    z = np.asarray(last_row, dtype=float)
    n = z.size
    rng = np.random.default_rng(rng)
    M = np.column_stack([z, rng.standard_normal((n, n - 1))])
    Q, _ = np.linalg.qr(M)
    Q[:, 0] *= np.sign(Q[:, 0] @ z)
    Z = Q.T[np.r_[1:n, 0]]
    return Z


def model_from_spectral(sd: SpectralData, z_full=None, rng=None) -> ModelPotential:
    """Separable coupling matrix reproducing the given truncated spectrum.

    Only the last row of Z is physical; if ``z_full`` is not supplied a
    random orthogonal completion is drawn.
    """
    Z = complete_orthogonal(sd.z_last, rng) if z_full is None else np.asarray(z_full, dtype=float)
    if not np.allclose(Z[-1], sd.z_last, atol=1e-12):
        raise ValueError("z_full's last row does not match the spectral data")
    H = Z @ np.diag(sd.lam) @ Z.T
    Tinv = np.linalg.inv(_transfer(sd.N, sd.ell, sd.b))
    V = Tinv @ H @ Tinv.T - jmatrix(sd.N, sd.ell, 0.0, sd.b)
    return ModelPotential(ell=sd.ell, b=sd.b, V=(V + V.T) / 2)


def green_matrix(pot: ModelPotential, k: float, branch: str = "+") -> np.ndarray:
    """<phi_bar_n | (k^2 -/+ i0 - h0)^-1 | phi_bar_n'> = -S_min C_max / k."""
    if not k > 0:
        raise ValueError("green_matrix requires real k > 0")
    N, ell, b = pot.N, pot.ell, pot.b
    s = [sine_like(n, ell, k, b) for n in range(N)]
    c = [cosine_like(n, ell, k, b, branch) for n in range(N)]
    G = np.empty((N, N), dtype=complex)
    for i in range(N):
        for j in range(i, N):
            G[i, j] = G[j, i] = -s[i] * c[j] / k
    return G


def fredholm_det(pot: ModelPotential, k: float, branch: str = "+") -> complex:
    """det(I - G0 V) at real k > 0."""
    G = green_matrix(pot, k, branch)
    return complex(np.linalg.det(np.eye(pot.N) - G @ pot.V))


def _spectral_braces(sd: SpectralData, k):
    N, ell, b = sd.N, sd.ell, sd.b
    k2 = k * k
    diffs = k2 - sd.lam
    prod_all = np.prod(diffs)
    partial = sum(sd.z_last[j] ** 2 * np.prod(np.delete(diffs, j)) for j in range(N))
    z = ((k - 1j * b) / (k + 1j * b)) ** 2
    pref = factorial(ell) * factorial(N + 2 * ell + 1) / (factorial(2 * ell + 1) * factorial(N + ell + 1))
    f1 = hyp2f1_terminating(-ell, N, N + ell + 1, z)
    f2 = hyp2f1_terminating(-ell, N + 1, N + ell + 2, z)
    return pref * ((N + ell + 1) * f1 * prod_all - N * (k - 1j * b) ** 2 * f2 * partial)


def fredholm_det_spectral(sd: SpectralData, k: complex) -> complex:
    """Closed spectral form of D+(k); valid for any complex k != -ib."""
    k = complex(k)
    if k == complex(0.0, -sd.b):
        raise PoleError("D+(k) has a pole at k = -ib")
    return complex(_spectral_braces(sd, k) / (k + 1j * sd.b) ** (2 * sd.N))


def leading_coefficient(sd: SpectralData) -> float:
    """Coefficient of k^M in R_M(k); equals 1 when sum_j Z_Nj^2 = 1."""
    N, ell = sd.N, sd.ell
    pref = factorial(ell) * factorial(N + 2 * ell + 1) / (factorial(2 * ell + 1) * factorial(N + ell + 1))
    f1 = hyp2f1_terminating(-ell, N, N + ell + 1, 1.0)
    f2 = hyp2f1_terminating(-ell, N + 1, N + ell + 2, 1.0)
    return float(pref * ((N + ell + 1) * f1 - N * f2 * np.sum(sd.z_last**2)))


def pmatrix(sd: SpectralData, k2: float) -> float:
    """P-matrix d_{N-1}^2 sum_j Z_Nj^2 / (k^2 - lambda_j)."""
    diffs = k2 - sd.lam
    if np.any(diffs == 0.0):
        j = int(np.flatnonzero(diffs == 0.0)[0])
        raise PoleError(f"P-matrix pole: k^2 equals lambda_{j + 1} = {sd.lam[j]}")
    return norm_psi(sd.N - 1, sd.ell, sd.b) ** 2 * float(np.sum(sd.z_last**2 / diffs))


def smatrix_jmatrix(sd: SpectralData, k: float) -> complex:
    """S(k) from the J-matrix solution with the P-matrix boundary condition."""
    if not k > 0:
        raise ValueError("smatrix_jmatrix requires real k > 0")
    N, ell, b = sd.N, sd.ell, sd.b
    pj = pmatrix(sd, k * k) * jmatrix_element(N - 1, N, ell, k, b)
    num = cosine_like(N - 1, ell, k, b, "-") - pj * cosine_like(N, ell, k, b, "-")
    den = cosine_like(N - 1, ell, k, b, "+") - pj * cosine_like(N, ell, k, b, "+")
    if den == 0:
        raise PoleError(f"J-matrix S-matrix denominator vanishes at k = {k}")
    return num / den


def fredholm_det_casoratian(sd: SpectralData, k: float) -> complex:
    """D+(k) via the Casoratian-based intermediate form (consistency check only)."""
    N, ell, b = sd.N, sd.ell, sd.b
    JN = jmatrix_element(N - 1, N, ell, k, b)
    pj = pmatrix(sd, k * k) * JN
    braces = cosine_like(N - 1, ell, k, b, "+") - pj * cosine_like(N, ell, k, b, "+")
    prod = 1.0
    for j in range(1, N + 1):
        prod *= (k * k - sd.lam[j - 1]) / (norm_psi(j - 1, ell, b) ** 2 * jmatrix_element(j - 1, j, ell, k, b))
    return -sine_like(0, ell, k, b) / k * JN * braces * prod


def yamaguchi_closed_form_det(v00: float, b: float, k: complex) -> complex:
    """D+(k) of the rank-1 s-wave model, ((k+ib)^2 - 2 b V00)/(k+ib)^2."""
    kb = k + 1j * b
    return (kb * kb - 2.0 * b * v00) / (kb * kb)

