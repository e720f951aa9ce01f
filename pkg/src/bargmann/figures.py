"""Plot windows for the reconstructed potentials and the tail-shape check."""
from __future__ import annotations

import numpy as np

from .marchenko import LocalPotentialCurve

SHALLOW_MEV = 1.0
TAIL_MEV = 0.1


def _local_extrema(V: np.ndarray, kind: str) -> np.ndarray:
    inner = V[1:-1]
    if kind == "min":
        mask = (inner < V[:-2]) & (inner <= V[2:])
    else:
        mask = (inner > V[:-2]) & (inner >= V[2:])
    return np.flatnonzero(mask) + 1


def last_sign_change(curve: LocalPotentialCurve) -> int | None:
    """Index of the first grid point after the last sign change of V."""
    s = np.sign(curve.V)
    idx = np.flatnonzero(s[1:] * s[:-1] < 0)
    return None if idx.size == 0 else int(idx[-1] + 1)


def tail_report(curve: LocalPotentialCurve) -> dict:
    """Shape of the potential beyond its last sign change.

    The tail passes if |V| stays below 0.1 MeV there, rises to a single
    maximum and then falls monotonically, and the final third is
    log-linear with a negative slope (exponential decay).
    """
    r, V = curve.r, curve.V
    i0 = last_sign_change(curve)
    if i0 is None:
        return {"ok": False, "reason": "no sign change"}
    a = np.abs(V[i0:])
    rt = r[i0:]
    ipk = int(np.argmax(a))
    rising = np.all(np.diff(a[: ipk + 1]) >= 0)
    falling = np.all(np.diff(a[ipk:]) <= 0)
    third = slice(2 * a.size // 3, None)
    nz = a[third] > 0
    slope, icpt = np.polyfit(rt[third][nz], np.log(a[third][nz]), 1)
    fit = slope * rt[third][nz] + icpt
    ss = np.sum((np.log(a[third][nz]) - fit) ** 2) / max(1e-300, np.sum((np.log(a[third][nz]) - np.log(a[third][nz]).mean()) ** 2))
    ok = bool(a.max() < TAIL_MEV and rising and falling and slope < 0 and ss < 1e-2)
    return {
        "ok": ok,
        "r_last_sign_change": float(r[i0]),
        "max_abs_tail_MeV": float(a.max()),
        "r_tail_peak": float(rt[ipk]),
        "unimodal": bool(rising and falling),
        "log_slope_per_fm": float(slope),
        "log_fit_rel_residual": float(ss),
    }


def deep_structure(curve: LocalPotentialCurve) -> dict:
    mins = _local_extrema(curve.V, "min")
    v_min = float(curve.V.min())
    return {"global_min_MeV": v_min, "r_global_min": float(curve.r[int(np.argmin(curve.V))]),
            "n_local_minima": int(mins.size), "local_minima_r": curve.r[mins].tolist()}


def figure_windows(curve: LocalPotentialCurve) -> dict[str, tuple[float, float]]:
    """r-windows: full range, second-well zoom, shallow zoom, tail."""
    r, V = curve.r, curve.V
    windows = {"full": (float(r[0]), float(r[-1]))}
    mins = list(_local_extrema(V, "min"))
    if V[0] < V[1]:
        mins.insert(0, 0)  # the well may extend to the first grid point
    maxs = _local_extrema(V, "max")
    if len(mins) >= 2:
        m2 = mins[1]
        lo = maxs[maxs < m2]
        hi = maxs[maxs > m2]
        ilo = int(lo[-1]) if lo.size else 0
        ihi = int(hi[0]) if hi.size else r.size - 1
        windows["second_well"] = (float(r[ilo]), float(r[ihi]))
    above = np.flatnonzero(np.abs(V) >= SHALLOW_MEV)
    i_sh = int(above[-1] + 1) if above.size else 0
    i_sh = min(i_sh, r.size - 2)
    tail = tail_report(curve)
    if tail["ok"]:
        r_end = min(float(r[-1]), 2 * tail["r_tail_peak"] - tail["r_last_sign_change"] + 1.0)
        windows["shallow"] = (float(r[i_sh]), max(r_end, float(r[i_sh + 1])))
    else:
        windows["shallow"] = (float(r[i_sh]), float(r[-1]))
    windows["tail"] = (float(r[i_sh]), float(r[-1]))
    return windows


def window_slice(curve: LocalPotentialCurve, lo: float, hi: float) -> LocalPotentialCurve:
    m = (curve.r >= lo) & (curve.r <= hi)
    return LocalPotentialCurve(r=curve.r[m], V=curve.V[m], consts=curve.consts)
