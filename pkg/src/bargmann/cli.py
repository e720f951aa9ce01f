"""Command-line pipeline: separable model -> Bargmann parameters -> V(r) -> checks.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import BargmannError
from .figures import deep_structure, figure_windows, tail_report, window_slice
from .marchenko import default_r_grid
from .model import DEFAULT_HBAR2_OVER_2MU, PhysicalConstants, from_yamaguchi, leading_coefficient
from .pipeline import bargmann_from_model, bargmann_from_spectral, reconstruct
from .rational import phase_shift, scattering_length, trace_identity
from .schrodinger import compare_phases, numerov_phases

FIGURE_FILES = {"full": "potential_full.csv", "second_well": "potential_second_well.csv",
                "shallow": "potential_shallow.csv", "tail": "potential_tail.csv"}


def _number(text: str) -> float:
    return float(text.replace(",", "."))


def _consts(args) -> PhysicalConstants:
    return PhysicalConstants(args.hbar2_over_2mu)


def _print_params(rs) -> None:
    for j, a in enumerate(rs.a, 1):
        if a.imag:
            print(f"a_{j} = {a.real:.10g} {'+' if a.imag > 0 else '-'} {abs(a.imag):.10g} i fm^-1")
        else:
            print(f"a_{j} = {a.real:.10g} fm^-1")
    if rs.ell == 0:
        total, expected = trace_identity(rs)
        print(f"sum a_j = {total:.6f}   2Nb = {expected:.6f}   diff = {total - expected:.3g}")
        print(f"scattering length = {scattering_length(rs):.6g} fm")


def _k_grid(args) -> np.ndarray:
    return np.linspace(args.kmin, args.kmax, args.nk)


def _r_grid(args) -> np.ndarray:
    return default_r_grid(r_min=args.rmin, r_max=args.rmax, n=args.nr)


def cmd_from_yamaguchi(args) -> int:
    pot = from_yamaguchi(args.lambda0, args.b, _consts(args))
    print(f"V00 = {pot.V[0, 0]:.10g} fm^-2 (hbar^2/2mu = {args.hbar2_over_2mu} MeV fm^2)")
    rs = bargmann_from_model(pot)
    _print_params(rs)
    io.write_params(rs, args.out)
    return 0


def cmd_from_spectral(args) -> int:
    sd = io.read_spectral(args.input, sum_tol=args.z_tol)
    lead = leading_coefficient(sd)
    print(f"N = {sd.N}, l = {sd.ell}, b = {sd.b}; sum Z^2 = {np.sum(sd.z_last**2):.12f}")
    print(f"leading coefficient of R(k) = {lead:.12f}")
    rs = bargmann_from_spectral(sd)
    _print_params(rs)
    io.write_params(rs, args.out)
    return 0


def cmd_reconstruct(args) -> int:
    rs = io.read_params(args.params)
    curve = reconstruct(rs, _consts(args), _r_grid(args))
    io.write_potential_csv(curve, args.out)
    print(f"wrote {curve.r.size} points to {args.out}; min V = {curve.V.min():.6g} MeV")
    return 0


def cmd_phases(args) -> int:
    rs = io.read_params(args.params)
    k = _k_grid(args)
    d_rat = phase_shift(rs, k)
    d_num = None
    if args.potential:
        d_num = numerov_phases(io.read_potential_csv(args.potential, _consts(args)), k)
    io.write_phases_csv(args.out, k, d_rat, d_num)
    print(f"wrote {k.size} phase shifts to {args.out}")
    return 0


def cmd_verify(args) -> int:
    rs = io.read_params(args.params)
    consts = _consts(args)
    if args.potential:
        curve = io.read_potential_csv(args.potential, consts)
    else:
        curve = reconstruct(rs, consts, _r_grid(args))
    pc = compare_phases(curve, rs, _k_grid(args), consts)
    report = pc.to_dict()
    report["tol"] = args.tol
    report["passed"] = pc.max_abs_diff < args.tol
    io.write_json(report, args.report)
    print(f"max |delta_numerov - delta_rational| = {pc.max_abs_diff:.3g} rad (tol {args.tol:g})")
    return 0 if report["passed"] else 2


def cmd_plotdata(args) -> int:
    rs = io.read_params(args.params)
    curve = reconstruct(rs, _consts(args), _r_grid(args))
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    windows = figure_windows(curve)
    for name, (lo, hi) in windows.items():
        path = outdir / FIGURE_FILES[name]
        io.write_potential_csv(window_slice(curve, lo, hi), path)
        print(f"{name:12s} r in [{lo:.4g}, {hi:.4g}] fm -> {path}")
    summary = {"windows": {k: list(v) for k, v in windows.items()},
               "deep": deep_structure(curve), "tail": tail_report(curve)}
    io.write_json(summary, outdir / "summary.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bargmann", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def consts(sp):
        sp.add_argument("--hbar2-over-2mu", type=_number, default=DEFAULT_HBAR2_OVER_2MU,
                        help="hbar^2/2mu in MeV fm^2 (default %(default)s)")

    def rgrid(sp):
        sp.add_argument("--rmin", type=float, default=0.02)
        sp.add_argument("--rmax", type=float, default=15.0)
        sp.add_argument("--nr", type=int, default=600)

    def kgrid(sp, kmin=0.01, kmax=5.0, nk=400):
        sp.add_argument("--kmin", type=float, default=kmin)
        sp.add_argument("--kmax", type=float, default=kmax)
        sp.add_argument("--nk", type=int, default=nk)

    sp = sub.add_parser("from-yamaguchi", help="rank-1 Yamaguchi model -> Bargmann parameters")
    sp.add_argument("--lambda0", type=_number, default=-76.4294, help="MeV fm^-1")
    sp.add_argument("--b", type=_number, default=1.158023, help="fm^-1")
    consts(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_from_yamaguchi)

    sp = sub.add_parser("from-spectral", help="spectral.json -> Bargmann parameters")
    sp.add_argument("--input", required=True)
    sp.add_argument("--z-tol", type=float, default=1e-6, help="allowed |sum Z^2 - 1|")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_from_spectral)

    sp = sub.add_parser("reconstruct", help="Bargmann parameters -> potential.csv")
    sp.add_argument("--params", required=True)
    consts(sp)
    rgrid(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("phases", help="phase shifts of the rational S-matrix (and optionally Numerov)")
    sp.add_argument("--params", required=True)
    sp.add_argument("--potential", help="potential.csv for a Numerov column")
    consts(sp)
    kgrid(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_phases)

    sp = sub.add_parser("verify", help="Numerov vs rational phase shifts")
    sp.add_argument("--params", required=True)
    sp.add_argument("--potential", help="use this potential.csv instead of reconstructing")
    consts(sp)
    rgrid(sp)
    kgrid(sp, 0.05, 3.0, 40)
    sp.add_argument("--tol", type=float, default=2e-3, help="rad")
    sp.add_argument("--report", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("plotdata", help="per-figure potential windows as CSV")
    sp.add_argument("--params", required=True)
    consts(sp)
    rgrid(sp)
    sp.add_argument("--outdir", required=True)
    sp.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BargmannError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
