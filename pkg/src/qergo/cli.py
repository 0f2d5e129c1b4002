"""Command-line front end.

Exit codes: 0 success, 2 domain error (including bad flags), 3 numerical
failure, 4 self-test failure.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import selftest
from .bloch import BlochVector, polar_init
from .channels import ChannelSpec
from .errors import DomainError, NumericalError
from .events import analyze, characteristic_times, default_grid_step, default_horizon
from .scan import ScanGrid, default_grid, grid_scan, line_scan_equator, line_scan_pure
from .serialize import csv_text, json_text, make_manifest, read_manifest, records_csv, write_output
from .thermo import ergotropy_variation, ledger, passive_variation, work_env

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_SELFTEST = 0, 2, 3, 4

TRAJECTORY_COLUMNS = ("gt", "C", "U", "r", "E", "E_I", "E_C", "Q", "Wstar", "Upi")

FIGURE_PRESETS = {
    "3": {"kind": "grid", "quantity": "tau_c"},
    "4": {"kind": "grid", "quantity": "dUpi"},
    "5": {"kind": "equator"},
    "6": {"kind": "pure"},
}


def _channel_flags(p, required=True):
    p.add_argument("--channel", choices=("pd", "ad"), required=required)
    p.add_argument("--regime", choices=("markov", "nm"), default="markov")
    p.add_argument("--gamma-ratio", type=float, default=None, help="Gamma/gamma for the nm regime")
    p.add_argument("--gamma", type=float, default=1.0, help=argparse.SUPPRESS)


def _state_flags(p):
    p.add_argument("--c0", type=float, help="initial coherence (azimuth 0)")
    p.add_argument("--u0", type=float, help="initial energy")
    p.add_argument("--r0", type=float, help="initial Bloch radius")
    p.add_argument("--theta0", type=float, help="initial polar angle")
    p.add_argument("--phi0", type=float, default=0.0, help="initial azimuth")


def _output_flags(p, formats, default):
    p.add_argument("--out", default=None, help="output path (stdout if omitted)")
    p.add_argument("--format", choices=formats, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qergo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectory", help="ergotropy and thermodynamic time series")
    _channel_flags(p)
    _state_flags(p)
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=1000, help="number of time intervals")
    _output_flags(p, ("csv", "json"), "csv")

    p = sub.add_parser("events", help="sudden changes, eternal death, freezing")
    _channel_flags(p)
    _state_flags(p)
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    _output_flags(p, ("text", "json"), "text")

    p = sub.add_parser("adiabatic", help="heat-zero times and energetics there")
    _channel_flags(p)
    _state_flags(p)
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--largest", action="store_true", help="report only the largest characteristic time")
    _output_flags(p, ("text", "json"), "text")

    p = sub.add_parser("scan", help="grid and line scans of the adiabatic point")
    p.add_argument("--figure", choices=sorted(FIGURE_PRESETS), default=None)
    p.add_argument("--kind", choices=("grid", "equator", "pure"), default=None)
    p.add_argument("--regime", choices=("markov", "nm"), default="markov", help="grid scans only")
    p.add_argument("--gamma-ratio", type=float, default=None)
    p.add_argument("--n-r", type=int, default=50)
    p.add_argument("--n-theta", type=int, default=50)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--full-range", action="store_true", help="non-Markovian grids: theta0 up to pi")
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--layout", choices=("long", "matrix"), default=None)
    p.add_argument("--quantity", choices=("tau_c", "dUpi", "Wstar", "dE"), default=None)
    p.add_argument("--workers", type=int, default=1)
    _output_flags(p, ("csv", "json"), "csv")

    p = sub.add_parser("figures", help="write CSV data for all six figures")
    p.add_argument("--outdir", default="figures")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--n-grid", type=int, default=50)

    sub.add_parser("selftest", help="oracle-equivalence and identity checks")

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", default=None, help="write here instead of the recorded path")
    return parser


def _spec(args) -> ChannelSpec:
    return ChannelSpec(args.channel, args.regime, args.gamma_ratio, gamma=args.gamma)


def _state(args) -> BlochVector:
    polar = args.r0 is not None or args.theta0 is not None
    cu = args.c0 is not None or args.u0 is not None
    if polar and cu:
        raise DomainError("give either --c0/--u0 or --r0/--theta0, not both")
    if polar:
        if args.r0 is None or args.theta0 is None:
            raise DomainError("--r0 and --theta0 go together")
        return polar_init(args.r0, args.theta0, args.phi0)
    if args.c0 is None or args.u0 is None:
        raise DomainError("an initial state is required: --c0/--u0 or --r0/--theta0")
    if args.c0 * args.c0 + args.u0 * args.u0 > 1.0 + 1e-12:
        raise DomainError("C0^2 + U0^2 must not exceed 1")
    return BlochVector.from_coherence_energy(args.c0, args.u0)


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("command",)}


def cmd_trajectory(args):
    spec, b0 = _spec(args), _state(args)
    if args.steps < 1 or not args.tmax > 0:
        raise DomainError("need --steps >= 1 and --tmax > 0")
    ts = np.linspace(0.0, args.tmax, args.steps + 1)
    L = ledger(spec, b0, ts)
    cols = (ts, L.C, L.U, L.r, L.E, L.E_I, L.E_C, L.Q, L.Wstar, L.Upi)
    if args.format == "json":
        return json_text({name: col for name, col in zip(TRAJECTORY_COLUMNS, cols)})
    return csv_text(TRAJECTORY_COLUMNS, zip(*cols))


def _events_text(rep, spec, b0) -> str:
    lines = [f"channel: {spec.label()}", f"initial state: {b0}"]
    lines.append(f"horizon: {rep.horizon:g}  grid step: {rep.grid_step:g}")
    for k, t in enumerate(rep.sudden_times):
        lines.append(f"sudden change t{k + 1} = {t:.12g} ({'death' if k % 2 == 0 else 'birth'})")
    for t in rep.tangencies:
        lines.append(f"tangency at {t:.12g}")
    lines.append(f"eternal death: {'none' if rep.eternal_death is None else format(rep.eternal_death, '.12g')}")
    lines.append(f"frozen: {rep.frozen} value: {rep.frozen_value} (analytic criterion: {rep.frozen_analytic})")
    lines.append(f"incoherent frozen: {rep.incoherent_frozen} value: {rep.incoherent_value}")
    lines.append(f"characteristic times ({rep.characteristic_status}): "
                 + ", ".join(format(t, ".12g") for t in rep.characteristic_times))
    return "\n".join(lines) + "\n"


def cmd_events(args):
    spec, b0 = _spec(args), _state(args)
    rep = analyze(spec, b0, args.horizon, args.grid_step, args.tol)
    if args.format == "json":
        return json_text(rep.to_dict())
    return _events_text(rep, spec, b0)


def adiabatic_records(spec, b0, times):
    recs = []
    for t in times:
        dE = ergotropy_variation(spec, b0, t)
        recs.append({
            "gt": t,
            "Wstar": work_env(spec, b0, t),
            "dE": dE.total,
            "dE_C": dE.coherent,
            "dE_I": dE.incoherent,
            "dUpi": passive_variation(spec, b0, t),
        })
    return recs


def cmd_adiabatic(args):
    spec, b0 = _spec(args), _state(args)
    horizon = default_horizon(spec) if args.horizon is None else args.horizon
    step = default_grid_step(spec) if args.grid_step is None else args.grid_step
    ct = characteristic_times(spec, b0, horizon, step, largest_only=args.largest)
    recs = adiabatic_records(spec, b0, ct.times)
    if args.format == "json":
        return json_text({"status": ct.status, "horizon": horizon, "grid_step": step, "points": recs})
    lines = [f"channel: {spec.label()}", f"status: {ct.status}"]
    for r in recs:
        lines.append(
            f"gt_c = {r['gt']:.12g}  W* = {r['Wstar']:.12g}  dE = {r['dE']:.12g}  dUpi = {r['dUpi']:.12g}"
        )
    return "\n".join(lines) + "\n"


def _grid_records(g: ScanGrid):
    for i, r0 in enumerate(g.r0_values):
        for j, th in enumerate(g.theta0_values):
            def v(a):
                x = a[i, j]
                return 0.0 if math.isnan(x) else x

            yield {"r0": r0, "theta0": th, "status": g.status[i, j], "tau_c": v(g.tau_c),
                   "Wstar": v(g.Wstar), "dE": v(g.dE), "dUpi": v(g.dUpi)}


def _grid_matrix(g: ScanGrid, quantity: str) -> str:
    a = np.nan_to_num(getattr(g, quantity), nan=0.0)
    header = ["r0\\theta0"] + [float(t) for t in g.theta0_values]
    return csv_text([h if isinstance(h, str) else format(h, ".17g") for h in header],
                    ([float(r0)] + list(row) for r0, row in zip(g.r0_values, a)))


def cmd_scan(args):
    kind, quantity, layout = args.kind, args.quantity, args.layout
    if args.figure is not None:
        preset = FIGURE_PRESETS[args.figure]
        kind = kind or preset["kind"]
        quantity = quantity or preset.get("quantity")
    kind = kind or "grid"
    if kind == "grid":
        if args.regime == "nm" and args.gamma_ratio is None:
            raise DomainError("--gamma-ratio is required for non-Markovian grids")
        spec = ChannelSpec("ad", args.regime, args.gamma_ratio)
        g = default_grid(spec, args.n_r, args.n_theta, args.full_range)
        g.phi0, g.horizon, g.grid_step = args.phi0, args.horizon, args.grid_step
        g = grid_scan(g, workers=args.workers)
        if args.format == "json":
            return json_text({"r0": g.r0_values, "theta0": g.theta0_values, "tau_c": g.tau_c,
                              "Wstar": g.Wstar, "dE": g.dE, "dUpi": g.dUpi, "status": g.status.tolist(),
                              "horizon": g.horizon, "grid_step": g.grid_step})
        if (layout or ("matrix" if args.figure else "long")) == "matrix":
            return _grid_matrix(g, quantity or "tau_c")
        return records_csv(_grid_records(g))
    ratio = 0.01 if args.gamma_ratio is None else args.gamma_ratio
    if kind == "equator":
        table = line_scan_equator(np.linspace(0.0, 1.0, args.points), ratio, args.phi0,
                                  args.horizon, args.grid_step, args.workers)
    else:
        table = line_scan_pure(np.linspace(0.0, math.pi / 2, args.points), ratio, args.phi0,
                               args.horizon, args.grid_step, args.workers)
    if args.format == "json":
        return json_text({"parameter": table.parameter, "gamma_ratio": ratio, "rows": list(table.rows())})
    return records_csv(table.rows())


FIGURE_RUNS = [
    ("fig1_pd_nm.csv", ["trajectory", "--channel", "pd", "--regime", "nm", "--gamma-ratio", "0.01",
                        "--c0", "0.5", "--u0", "0.5", "--tmax", "50", "--steps", "1000"]),
    ("fig1_pd_markov.csv", ["trajectory", "--channel", "pd", "--regime", "markov",
                            "--c0", "0.5", "--u0", "0.5", "--tmax", "50", "--steps", "1000"]),
    ("fig2_ad_nm.csv", ["trajectory", "--channel", "ad", "--regime", "nm", "--gamma-ratio", "0.001",
                        "--c0", "0.5", "--u0", "0.5", "--tmax", "600", "--steps", "6000"]),
    ("fig2_ad_markov.csv", ["trajectory", "--channel", "ad", "--regime", "markov",
                            "--c0", "0.5", "--u0", "0.5", "--tmax", "5", "--steps", "1000"]),
    ("fig3_tau_c.csv", ["scan", "--figure", "3"]),
    ("fig4_dUpi.csv", ["scan", "--figure", "4"]),
    ("fig5_equator.csv", ["scan", "--figure", "5"]),
    ("fig6_pure.csv", ["scan", "--figure", "6"]),
]


def cmd_figures(args):
    outdir = Path(args.outdir)
    for name, argv in FIGURE_RUNS:
        argv = list(argv)
        if argv[0] == "scan":
            if argv[2] in ("3", "4"):
                argv += ["--n-r", str(args.n_grid), "--n-theta", str(args.n_grid)]
            else:
                argv += ["--points", str(args.points)]
            argv += ["--workers", str(args.workers)]
        code = main(argv + ["--out", str(outdir / name)])
        if code != EXIT_OK:
            return code
        print(f"wrote {outdir / name}", file=sys.stderr)
    return None


def cmd_replay(args):
    m = read_manifest(args.manifest)
    argv = list(m["argv"])
    if args.out is not None:
        if "--out" in argv:
            k = argv.index("--out")
            del argv[k:k + 2]
        argv += ["--out", args.out]
    return main(argv)


COMMANDS = {
    "trajectory": cmd_trajectory,
    "events": cmd_events,
    "adiabatic": cmd_adiabatic,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "selftest":
            return EXIT_OK if selftest.run() else EXIT_SELFTEST
        if args.command == "figures":
            code = cmd_figures(args)
            return EXIT_OK if code is None else code
        if args.command == "replay":
            return cmd_replay(args)
        start = time.perf_counter()
        text = COMMANDS[args.command](args)
        duration = time.perf_counter() - start
        manifest = make_manifest(args.command, argv, _params(args), duration)
        write_output(text, args.out, manifest)
        return EXIT_OK
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
