"""File formats: spectral.json, bargmann_params.json, potential/phase CSVs, reports."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .marchenko import LocalPotentialCurve
from .model import PhysicalConstants, SpectralData
from .rational import RationalSMatrix


class SchemaError(ValueError):
    pass


def _require(obj: dict, key: str, kind):
    if key not in obj:
        raise SchemaError(f"missing key {key!r}")
    if not isinstance(obj[key], kind) or isinstance(obj[key], bool):
        raise SchemaError(f"key {key!r} has wrong type {type(obj[key]).__name__}")
    return obj[key]


def _number(x) -> float:
    if isinstance(x, str):
        # decimal commas as printed in some tables
        x = x.replace(",", ".")
    try:
        return float(x)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"not a number: {x!r}") from exc


def spectral_from_dict(d: dict, sum_tol: float = 1e-6) -> SpectralData:
    ell = _require(d, "ell", int)
    b = _number(_require(d, "b", (int, float, str)))
    N = _require(d, "N", int)
    lam = [_number(x) for x in _require(d, "lambda", list)]
    z = [_number(x) for x in _require(d, "Z_last_row", list)]
    if len(lam) != N or len(z) != N:
        raise SchemaError(f"N = {N} but got {len(lam)} eigenvalues and {len(z)} Z entries")
    return SpectralData(ell=ell, b=b, lam=lam, z_last=z, sum_tol=sum_tol)


def spectral_to_dict(sd: SpectralData) -> dict:
    return {"ell": sd.ell, "b": sd.b, "N": sd.N, "lambda": sd.lam.tolist(), "Z_last_row": sd.z_last.tolist()}


def read_spectral(path, sum_tol: float = 1e-6) -> SpectralData:
    return spectral_from_dict(json.loads(Path(path).read_text()), sum_tol=sum_tol)


def write_spectral(sd: SpectralData, path) -> None:
    Path(path).write_text(json.dumps(spectral_to_dict(sd), indent=2) + "\n")


def params_to_dict(rs: RationalSMatrix) -> dict:
    d = {"b": rs.b, "script_N": rs.script_N, "a": [[float(x.real), float(x.imag)] for x in rs.a]}
    if rs.ell:
        d["ell"] = rs.ell
    return d


def params_from_dict(d: dict) -> RationalSMatrix:
    b = _number(_require(d, "b", (int, float)))
    n = _require(d, "script_N", int)
    pairs = _require(d, "a", list)
    if len(pairs) != n:
        raise SchemaError(f"script_N = {n} but {len(pairs)} parameters given")
    a = []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise SchemaError(f"parameter entry must be [re, im], got {p!r}")
        a.append(complex(_number(p[0]), _number(p[1])))
    return RationalSMatrix(b=b, a=np.array(a), ell=int(d.get("ell", 0)))


def read_params(path) -> RationalSMatrix:
    return params_from_dict(json.loads(Path(path).read_text()))


def write_params(rs: RationalSMatrix, path) -> None:
    Path(path).write_text(json.dumps(params_to_dict(rs), indent=2) + "\n")


def write_potential_csv(curve: LocalPotentialCurve, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r_fm", "V_MeV"])
        for r, v in zip(curve.r, curve.V):
            w.writerow([f"{r:.12g}", f"{v:.12g}"])


def read_potential_csv(path, consts: PhysicalConstants = PhysicalConstants()) -> LocalPotentialCurve:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["r_fm", "V_MeV"]:
        raise SchemaError(f"{path}: expected header r_fm,V_MeV")
    data = np.array([[float(x) for x in row] for row in rows[1:]])
    return LocalPotentialCurve(r=data[:, 0], V=data[:, 1], consts=consts)


def write_phases_csv(path, k, delta_rational, delta_numerov=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k_fm-1", "delta_rational"] + ([] if delta_numerov is None else ["delta_numerov"]))
        for i, kk in enumerate(k):
            row = [f"{kk:.12g}", f"{delta_rational[i]:.12g}"]
            if delta_numerov is not None:
                row.append(f"{delta_numerov[i]:.12g}")
            w.writerow(row)


def write_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
