"""Command-line front end.

    relkin spectrum  --well|--ho|--coulomb [...]
    relkin threshold --ratio R [--mode paper|strict] [--well|--ho|--coulomb]
    relkin convert   --from tn|t0|t --to tn|t0|t --value V [--mc2 M]
    relkin verify    --well|--ho|--coulomb [...]
    relkin weakrel   --well|--ho|--coulomb --n N --l L [--j J]

Exit status: 0 on success, 1 on a numeric failure or failed verification,
2 on invalid flags.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import corrections, kinetic, oracle, plotting, report, spectra, weakrel
from .spectra import ELECTRON_MC2_EV, ENERGY_UNITS, LENGTH_UNITS, QuantumNumbers

MODE_NOTE = (
    "paper mode divides |dh| by x mc2 = 2<t0>; strict divides by x mc2/2 = <t0> "
    "(|dh|/|e| for well and Coulomb). The 1% thresholds x* ~ 0.083 and Z/n ~ 39.5 "
    "follow paper mode; strict thresholds are roughly half in x."
)


class UsageError(Exception):
    pass


def _potential_args(p, required=True):
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--well", dest="potential", action="store_const", const="well")
    group.add_argument("--ho", dest="potential", action="store_const", const="ho")
    group.add_argument("--coulomb", dest="potential", action="store_const", const="coulomb")
    p.add_argument("--energy-unit", choices=sorted(ENERGY_UNITS), help="default GeV (eV for --coulomb)")
    p.add_argument("--length-unit", choices=sorted(LENGTH_UNITS), help="default fm (nm for --coulomb)")
    p.add_argument("--mc2", type=float, help="rest energy in --energy-unit")
    p.add_argument("--mc2-gev", type=float, help="rest energy in GeV")
    p.add_argument("--hbar-c", type=float, help="hbar c in energy-unit * length-unit (default 0.197 GeV fm)")
    p.add_argument("--d", type=float, help="well radius in --length-unit")
    p.add_argument("--d-fm", type=float, help="well radius in fm")
    p.add_argument("--hbar-omega", type=float, help="oscillator quantum in --energy-unit")
    p.add_argument("--z", type=float, help="oscillator z = hbar omega / mc2 (default 0.04)")
    p.add_argument("--Z", type=int, default=1, help="nuclear charge (Coulomb)")
    p.add_argument("--alpha", type=float, default=spectra.ALPHA)


def _output_args(p):
    p.add_argument("--format", choices=sorted(report.FORMATS), default="table")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")


def _level_args(p):
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--lmax", type=int, default=None, help="default 0 (well, HO); all l (Coulomb)")
    p.add_argument("--npmax", type=int, default=2, help="largest principal n (Coulomb)")


def build_parser():
    parser = argparse.ArgumentParser(prog="relkin", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="analytic levels with first-order corrections")
    _potential_args(p)
    _level_args(p)
    _output_args(p)
    p.add_argument("--emit-plot-data", type=Path, metavar="DIR", help="write plot-ready CSV series to DIR")
    p.add_argument("--plot", type=Path, metavar="DIR", help="render PNG figures to DIR")

    p = sub.add_parser("threshold", help="x at which the correction reaches a given ratio")
    _potential_args(p, required=False)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--mode", choices=corrections.MODES, default="paper")
    p.add_argument("--lmax", type=int, default=0)
    _output_args(p)
    p.add_argument("--emit-plot-data", type=Path, metavar="DIR")
    p.add_argument("--plot", type=Path, metavar="DIR")

    p = sub.add_parser("convert", help="convert between tn, t0 and t")
    p.add_argument("--from", dest="source", choices=["tn", "t0", "t"], required=True)
    p.add_argument("--to", dest="target", choices=["tn", "t0", "t"], required=True)
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--mc2", type=float, default=1.0)
    _output_args(p)

    p = sub.add_parser("verify", help="check analytic levels against the Numerov oracle")
    _potential_args(p)
    _level_args(p)
    p.add_argument("--points", type=int, default=spectra.DEFAULT_POINTS, help="oracle grid points (odd)")
    p.add_argument("--jobs", type=int, default=None, help="worker threads")
    _output_args(p)

    p = sub.add_parser("weakrel", help="expectation values of v_T, v_S, v_D")
    _potential_args(p)
    p.add_argument("--n", type=int, default=1, help="radial label (n - 1 nodes)")
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--j", type=float, default=None, help="total angular momentum, default l + 1/2")
    _output_args(p)
    return parser


def _setup(args):
    """Potential, constants and scales from the flags."""
    kind = args.potential
    coulomb = kind == "coulomb"
    eu = args.energy_unit or ("eV" if coulomb else "GeV")
    lu = args.length_unit or ("nm" if coulomb else "fm")
    to_eu = 1.0 / ENERGY_UNITS[eu]
    if args.mc2 is not None and args.mc2_gev is not None:
        raise UsageError("give only one of --mc2 and --mc2-gev")
    if args.mc2 is not None:
        mc2 = args.mc2
    elif args.mc2_gev is not None:
        mc2 = args.mc2_gev * ENERGY_UNITS["GeV"] * to_eu
    else:
        mc2 = (ELECTRON_MC2_EV if coulomb else 1e9) * to_eu
    try:
        const = spectra.PhysicalConstants.in_units(mc2, eu, lu, args.hbar_c)
        if kind == "well":
            if args.d is not None and args.d_fm is not None:
                raise UsageError("give only one of --d and --d-fm")
            if args.d is not None:
                d = args.d
            else:
                d = (args.d_fm if args.d_fm is not None else 1.0) * LENGTH_UNITS["fm"] / LENGTH_UNITS[lu]
            pot = spectra.Well(d)
        elif kind == "ho":
            if args.hbar_omega is not None and args.z is not None:
                raise UsageError("give only one of --hbar-omega and --z")
            hw = args.hbar_omega if args.hbar_omega is not None else (args.z or 0.04) * const.mc2
            pot = spectra.HarmonicOscillator(hw)
        else:
            pot = spectra.Coulomb(args.Z, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return pot, const, spectra.scales(pot, const)


def _config(args, pot, const, sc):
    cfg = {"command": args.command, "potential": pot.kind}
    params = {k: v for k, v in vars(pot).items()}
    cfg["parameters"] = params
    cfg["constants"] = {
        "mc2": const.mc2,
        "hbar_c": const.hbar_c,
        "energy_unit": const.energy_unit,
        "length_unit": const.length_unit,
    }
    cfg["scales"] = {"epsilon": sc.epsilon, "b": sc.b, "z": sc.z}
    return cfg


def _levels(args, pot):
    if args.nmax < 1 or args.npmax < 1 or (args.lmax is not None and args.lmax < 0):
        raise UsageError("--nmax/--npmax must be >= 1 and --lmax >= 0")
    if pot.kind == "coulomb":
        return [
            QuantumNumbers.coulomb(n_p, l)
            for n_p in range(1, args.npmax + 1)
            for l in range(n_p)
            if args.lmax is None or l <= args.lmax
        ]
    lmax = args.lmax or 0
    return [QuantumNumbers(n, l) for l in range(lmax + 1) for n in range(1, args.nmax + 1)]


def level_row(pot, qn, sc):
    rep = corrections.correction_report(pot, qn, sc)
    lev = rep.level
    row = {"n": qn.n, "l": qn.l}
    if pot.kind == "coulomb":
        row["n_p"] = qn.principal
    row.update(
        e_dimless=lev.e / sc.epsilon,
        e=lev.e,
        t0_mean=lev.t0_mean,
        v_mean=lev.v_mean,
        delta_h=lev.delta_h,
        e_corrected=lev.e_corrected,
        x=rep.x,
        ratio_strict=rep.ratio_strict,
        ratio_paper=rep.ratio_paper,
        extension=spectra.is_extension(pot, qn),
    )
    return row


def cmd_spectrum(args):
    pot, const, sc = _setup(args)
    levels = _levels(args, pot)
    rows = [level_row(pot, qn, sc) for qn in levels]
    cfg = _config(args, pot, const, sc)
    cfg["notes"] = [MODE_NOTE, "e_dimless is e / epsilon"]
    if any(r["extension"] for r in rows):
        cfg["notes"].append("well levels with l > 0 use zeros of j_l (extension of the l = 0 formulas)")
    if args.emit_plot_data or args.plot:
        series = []
        for qn in levels:
            xi = spectra.quadrature_grid(pot, qn)[::8]
            series.append((f"n={qn.n}, l={qn.l}", xi, spectra.radial_u(pot, qn, xi)))
        if args.emit_plot_data:
            plotting.write_csv(
                args.emit_plot_data / "wavefunctions.csv",
                ["n", "l", "xi", "u"],
                [(qn.n, qn.l, f"{x:.12g}", f"{u:.12g}") for qn, (_, xs, us) in zip(levels, series) for x, u in zip(xs, us)],
            )
            plotting.write_csv(
                args.emit_plot_data / "levels.csv",
                ["n", "l", "e", "e_corrected"],
                [(r["n"], r["l"], f"{r['e']:.12g}", f"{r['e_corrected']:.12g}") for r in rows],
            )
        if args.plot:
            title = f"{pot.kind}, z = {sc.z:.4g}"
            plotting.plot_wavefunctions(series, args.plot / "wavefunctions.png", title)
            plotting.plot_levels(rows, args.plot / "levels.png", f"e [{const.energy_unit}]", title)
    return report.document(cfg, rows), 0


def cmd_threshold(args):
    limit = {"paper": 0.5, "strict": 1.0}[args.mode]
    if not 0 < args.ratio < limit:
        raise UsageError(f"--ratio must lie in (0, {limit}) for {args.mode} mode")
    cfg = {"command": "threshold", "ratio": args.ratio, "mode": args.mode, "notes": [MODE_NOTE]}
    pot = sc = None
    if args.potential:
        pot, const, sc = _setup(args)
        cfg.update({k: v for k, v in _config(args, pot, const, sc).items() if k != "command"})
    modes = [args.mode] + [m for m in corrections.MODES if m != args.mode]
    rows, thresholds = [], {}
    for mode in modes:
        if args.ratio >= {"paper": 0.5, "strict": 1.0}[mode]:
            continue
        xs = corrections.threshold_x(args.ratio, mode)
        thresholds[mode] = xs
        alpha = pot.alpha if pot is not None and pot.kind == "coulomb" else spectra.ALPHA
        base = {"mode": mode, "ratio": args.ratio, "x_star": xs, "Z_over_n": math.sqrt(xs) / alpha}
        if pot is None:
            rows.append(base)
        elif pot.kind == "coulomb":
            rows.append({**base, "Z": pot.Z, "n_max": corrections.coulomb_max_n(xs, pot.Z, pot.alpha)})
        else:
            find = corrections.well_min_n if pot.kind == "well" else corrections.ho_min_n
            for l in range(args.lmax + 1):
                rows.append({**base, "l": l, "n_min": find(xs, sc.z, l)})
    if args.emit_plot_data:
        x, paper, strict = plotting.ratio_curve()
        plotting.write_csv(
            args.emit_plot_data / "ratio_curve.csv",
            ["x", "ratio_paper", "ratio_strict"],
            [(f"{a:.12g}", f"{b:.12g}", f"{c:.12g}") for a, b, c in zip(x, paper, strict)],
        )
    if args.plot:
        plotting.plot_ratio(args.plot / "ratio.png", args.ratio, thresholds)
    return report.document(cfg, rows), 0


def cmd_convert(args):
    if args.mc2 <= 0:
        raise UsageError("--mc2 must be positive")
    result = kinetic.convert(args.value, args.source, args.target, args.mc2)
    cfg = {"command": "convert", "mc2": args.mc2}
    row = {"from": args.source, "to": args.target, "value": args.value, "result": result}
    return report.document(cfg, [row]), 0


def cmd_verify(args):
    pot, const, sc = _setup(args)
    if args.points < 5 or args.points % 2 == 0:
        raise UsageError("--points must be an odd integer >= 5")
    levels = _levels(args, pot)
    results = oracle.verify_levels(pot, levels, sc, workers=args.jobs, points=args.points)
    rows, checks = [], []
    for qn, rep in zip(levels, results):
        row = {"n": qn.n, "l": qn.l}
        if pot.kind == "coulomb":
            row["n_p"] = qn.principal
        row.update(
            e_analytic=rep.e_analytic,
            e_numeric=rep.e_numeric,
            nodes=rep.nodes,
            norm=rep.norm,
            t0_mean=rep.t0_mean,
            v_mean=rep.v_mean,
            delta_h=rep.delta_h,
            delta_h_over_mc2=rep.delta_h / sc.mc2,
            passed=rep.passed,
        )
        rows.append(row)
        for c in rep.checks:
            checks.append({"n": qn.n, "l": qn.l, "name": c.name, "value": c.value,
                           "tolerance": c.tolerance, "passed": c.passed})
    cfg = _config(args, pot, const, sc)
    cfg["points"] = args.points
    ok = all(c["passed"] for c in checks)
    cfg["all_passed"] = ok
    return report.document(cfg, rows, checks), 0 if ok else 1


def cmd_weakrel(args):
    pot, const, sc = _setup(args)
    j = args.j if args.j is not None else args.l + 0.5
    try:
        qn = QuantumNumbers(args.n, args.l)
        spin = weakrel.SpinConfig(args.l, j)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = weakrel.expectation_weakrel(pot, qn, spin, const)
    row = {
        "n": qn.n,
        "l": qn.l,
        "j": j,
        "so_eigenvalue": spin.so_eigenvalue,
        "e": spectra.eigenvalue(pot, qn, sc),
        "v_T": res.v_T,
        "v_S": res.v_S,
        "v_D": res.v_D,
        "valid": res.valid,
        "max_ratio": res.max_ratio,
        "notes": "; ".join(res.notes),
    }
    cfg = _config(args, pot, const, sc)
    cfg["notes"] = [
        "valid is false when max |e - v| / 2mc2 on the grid exceeds "
        f"{weakrel.VALIDITY_LIMIT}",
        "v_S uses the prefactor 1/2 (hbar c/mc2)^2",
    ]
    return report.document(cfg, [row]), 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "threshold": cmd_threshold,
    "convert": cmd_convert,
    "verify": cmd_verify,
    "weakrel": cmd_weakrel,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError, oracle.ShootingError) as exc:
        print(f"relkin: error: {exc}", file=sys.stderr)
        return 1
    text = report.emit(doc, args.format)
    if args.output:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
