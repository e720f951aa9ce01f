"""Rank-4 model from tabulated spectral data: Bargmann parameters, V(r), figure windows.

Usage: python scripts/rank4.py [--input data/spectral_rank4.json] [--outdir results/rank4]
"""
import argparse
from pathlib import Path

import numpy as np

from bargmann import io
from bargmann.figures import deep_structure, figure_windows, tail_report, window_slice
from bargmann.model import PhysicalConstants, leading_coefficient
from bargmann.pipeline import bargmann_from_spectral, reconstruct
from bargmann.rational import scattering_length, trace_identity
from bargmann.schrodinger import compare_phases

ROOT = Path(__file__).resolve().parents[1]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--input", default=str(ROOT / "data" / "spectral_rank4.json"))
    p.add_argument("--outdir", default="results/rank4")
    args = p.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    sd = io.read_spectral(args.input)
    consts = PhysicalConstants()
    print(f"leading coefficient = {leading_coefficient(sd):.12f}")
    rs = bargmann_from_spectral(sd)
    for a in rs.a:
        print(f"  a = {a.real:+.9f} {a.imag:+.9f}i")
    total, expected = trace_identity(rs)
    print(f"sum a = {total:.10f} (2Nb = {expected})")
    print(f"scattering length = {scattering_length(rs):.4f} fm")

    curve = reconstruct(rs, consts)
    pc = compare_phases(curve, rs, np.linspace(0.05, 3.0, 40), consts)
    print(f"max |delta_numerov - delta_rational| = {pc.max_abs_diff:.3g} rad")
    deep, tail = deep_structure(curve), tail_report(curve)
    print(f"global min {deep['global_min_MeV']:.1f} MeV; local minima at r = {np.round(deep['local_minima_r'], 3)}")
    print(f"tail beyond {tail['r_last_sign_change']:.2f} fm: max |V| {tail['max_abs_tail_MeV']:.4f} MeV, "
          f"log slope {tail['log_slope_per_fm']:.3f} /fm, ok = {tail['ok']}")

    io.write_params(rs, out / "params.json")
    io.write_potential_csv(curve, out / "potential.csv")
    io.write_json(pc.to_dict(), out / "phases.json")
    for name, (lo, hi) in figure_windows(curve).items():
        io.write_potential_csv(window_slice(curve, lo, hi), out / f"window_{name}.csv")


if __name__ == "__main__":
    main()
