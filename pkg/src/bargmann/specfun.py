"""Laguerre-basis special functions for the J-matrix free problem.

Conventions: the reference Hamiltonian is h0 = -d^2/dr^2 + l(l+1)/r^2, the
basis is phi_n = (2br)^(l+1) exp(-br) L_n^(2l+1)(2br) and the form factors
phi_bar_n = n!/(r (n+2l+1)!) phi_n are biorthogonal to it.  The angle theta
with exp(i theta) = (k+ib)/(k-ib) is never materialized; everything is
computed from rational expressions in (k, b).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np
from scipy.special import eval_genlaguerre


@dataclass(frozen=True)
class ThetaPoint:
    k: float
    b: float
    exp_i_theta: complex
    sin_theta: float
    cos_theta: float

    @classmethod
    def from_kb(cls, k: float, b: float) -> "ThetaPoint":
        k2, b2 = k * k, b * b
        return cls(
            k=k,
            b=b,
            exp_i_theta=complex(k, b) / complex(k, -b),
            sin_theta=2.0 * k * b / (k2 + b2),
            cos_theta=(k2 - b2) / (k2 + b2),
        )


@dataclass(frozen=True)
class BasisSpec:
    ell: int
    b: float
    n: int = 0

    def __post_init__(self):
        if self.ell < 0 or self.n < 0:
            raise ValueError("ell and n must be non-negative")
        if not self.b > 0:
            raise ValueError("basis scale b must be positive")


def norm_psi(n: int, ell: int, b: float) -> float:
    """Normalization d_n of the orthonormal L^(2l+2) basis."""
    return sqrt(2.0 * b * factorial(n) / factorial(n + 2 * ell + 2))


def gegenbauer(n: int, alpha: float, x):
    """C_n^alpha(x) by forward three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    c_prev = 1.0
    if n == 0:
        return c_prev + 0.0 * x
    c = 2.0 * alpha * x
    for m in range(2, n + 1):
        c_prev, c = c, (2.0 * x * (m + alpha - 1) * c - (m + 2 * alpha - 2) * c_prev) / m
    return c


def hyp2f1_terminating(neg_ell: int, bb: float, cc: float, z: complex) -> complex:
    """Finite sum for 2F1(-l, bb; cc; z) with l a non-negative integer."""
    if int(neg_ell) != neg_ell or neg_ell > 0:
        raise ValueError(f"first parameter must be a non-positive integer, got {neg_ell}")
    if float(cc).is_integer() and cc <= 0:
        raise ValueError("cc must not be a non-positive integer")
    total, term = 0.0, 1.0
    for j in range(-int(neg_ell) + 1):
        total += term
        term *= (neg_ell + j) * (bb + j) / ((cc + j) * (j + 1)) * z
    return total


def sine_like(n: int, ell: int, k: float, b: float) -> float:
    """Regular solution coefficient S_n^l(k) = <phi_bar_n | kr j_l(kr)>.

    Carries an n! in the numerator; without it the three-term recursion and
    the Casoratian fail for n >= 1.
    """
    tp = ThetaPoint.from_kb(k, b)
    pref = factorial(n) * factorial(ell) * (2.0 * tp.sin_theta) ** (ell + 1)
    pref /= 2.0 * factorial(n + 2 * ell + 1)
    return pref * gegenbauer(n, ell + 1, tp.cos_theta)


def cosine_like(n: int, ell: int, k: float, b: float, branch: str = "+") -> complex:
    """Outgoing (+) or incoming (-) solution coefficient C_n^l(k)."""
    tp = ThetaPoint.from_kb(k, b)
    if branch == "+":
        e = 1.0 / tp.exp_i_theta
    elif branch == "-":
        e = tp.exp_i_theta
    else:
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    pref = -factorial(n) * e ** (n + 1) / (factorial(n + ell + 1) * (2.0 * tp.sin_theta) ** ell)
    return pref * hyp2f1_terminating(-ell, n + 1, n + ell + 2, e * e)


def jmatrix_element(n: int, nprime: int, ell: int, k, b: float):
    """<phi_n | h0 - k^2 | phi_n'>; tridiagonal in (n, n')."""
    k2 = k * k
    if n == nprime:
        return (n + ell + 1) * factorial(n + 2 * ell + 1) / factorial(n) * (b * b - k2) / b
    if abs(n - nprime) == 1:
        m = min(n, nprime)
        return factorial(m + 2 * ell + 2) / (2.0 * b * factorial(m)) * (b * b + k2)
    return 0.0 * k2


def jmatrix(size: int, ell: int, k, b: float) -> np.ndarray:
    """Leading size x size block of the J-matrix."""
    out = np.zeros((size, size), dtype=np.result_type(k, float))
    for n in range(size):
        for m in range(max(0, n - 1), min(size, n + 2)):
            out[n, m] = jmatrix_element(n, m, ell, k, b)
    return out


def basis_function(spec: BasisSpec, kind: str, r):
    """Pointwise phi, phi_bar or psi basis function at radius r (array ok)."""
    ell, b, n = spec.ell, spec.b, spec.n
    r = np.asarray(r, dtype=float)
    x = 2.0 * b * r
    if kind == "phi":
        return x ** (ell + 1) * np.exp(-b * r) * eval_genlaguerre(n, 2 * ell + 1, x)
    if kind == "phi_bar":
        # (2br)^(l+1)/r written as 2b (2br)^l to stay finite at r = 0
        pref = factorial(n) / factorial(n + 2 * ell + 1) * 2.0 * b
        return pref * x**ell * np.exp(-b * r) * eval_genlaguerre(n, 2 * ell + 1, x)
    if kind == "psi":
        return norm_psi(n, ell, b) * x ** (ell + 1) * np.exp(-b * r) * eval_genlaguerre(n, 2 * ell + 2, x)
    raise ValueError(f"unknown basis kind {kind!r}")
