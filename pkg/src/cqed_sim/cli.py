"""Command-line driver: ``cqed-sim {sweep,figure,regime,analytic}``.

All rates are in units of ``g`` (``--g`` defaults to 1).  ``--spec file.json``
loads a sweep description; flags given on the command line override it.
"""
from __future__ import annotations

import argparse
import json
import sys

from .analytics import (
    bad_cavity_crossing_pump,
    classify_regime,
    effective_coupling,
    efficiency_beta,
    optimal_dephasing,
    pumped_rates,
    purcell_factor,
    steady_populations_badcavity,
)
from .errors import CQEDError
from .figures import FIGURES, reproduce_figure
from .hilbert import SystemParams
from .sweep import AXES, ENGINES, OUTPUTS, SweepSpec, emit, run_sweep, to_csv, to_json

PARAM_FLAGS = {
    "g": "g",
    "kappa": "kappa",
    "gamma": "gamma",
    "gammastar": "gamma_star",
    "delta": "delta",
    "pump": "pump",
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    for flag in PARAM_FLAGS:
        p.add_argument(f"--{flag}", type=float, default=None)
    p.add_argument("--nmax", type=int, default=None)


def _params_from(args, base: dict | None = None) -> SystemParams:
    values = dict(base or {})
    for flag, name in PARAM_FLAGS.items():
        v = getattr(args, flag)
        if v is not None:
            values[name] = v
    if args.nmax is not None:
        values["n_max"] = args.nmax
    return SystemParams(**values)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cqed-sim", description="Simulate a dissipative Jaynes-Cummings emitter-cavity system.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep one rate and write CSV or JSON")
    _add_param_flags(p)
    p.add_argument("--spec", help="JSON sweep spec; flags override its values")
    p.add_argument("--axis", choices=AXES)
    p.add_argument("--min", type=float, dest="grid_min")
    p.add_argument("--max", type=float, dest="grid_max")
    p.add_argument("--points", type=int)
    p.add_argument("--log", action="store_true", default=None, help="log-spaced grid")
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--outputs", help=f"comma-separated subset of {','.join(OUTPUTS)}")
    p.add_argument("--nmax-check", action="store_true", default=None, dest="n_max_check")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("figure", help="write the data behind one figure")
    p.add_argument("id", choices=FIGURES)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--workers", type=int)

    for name, text in (("regime", "classify the coupling regime"), ("analytic", "closed-form rates")):
        p = sub.add_parser(name, help=text)
        _add_param_flags(p)
    return parser


def _sweep_spec(args) -> SweepSpec:
    d: dict = {}
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            d = json.load(fh)
    d["base"] = _params_from(args, d.get("base")).to_dict()
    grid = dict(d.get("grid", {}))
    for key, v in (("min", args.grid_min), ("max", args.grid_max), ("points", args.points)):
        if v is not None:
            grid[key] = v
    if args.log:
        grid["scale"] = "log"
    d["grid"] = grid
    if args.axis:
        d["axis"] = args.axis
    if args.engine:
        d["engine"] = args.engine
    if args.outputs:
        d["outputs"] = [s.strip() for s in args.outputs.split(",") if s.strip()]
    if args.n_max_check:
        d["n_max_check"] = True
    return SweepSpec.from_dict(d)


def _analytic_report(params: SystemParams) -> dict:
    p = params
    width = p.kappa + p.gamma + p.gamma_star
    out: dict = {"params": p.to_dict()}
    if width > 0:
        R = effective_coupling(p.g, p.kappa, p.gamma, p.gamma_star, p.delta)
        out["R"] = R
        if p.kappa > 0:
            out["beta"] = efficiency_beta(R, p.kappa, p.gamma)
        if p.gamma > 0:
            out["purcell_factor"] = purcell_factor(p.g, p.kappa, p.gamma, p.gamma_star, p.delta)
    if p.delta != 0:
        out["optimal_dephasing"] = optimal_dephasing(p.g, p.kappa, p.gamma, p.delta)._asdict()
    if width + p.pump > 0:
        out["pumped"] = pumped_rates(p)._asdict()
        if p.kappa > 0:
            out["bad_cavity"] = steady_populations_badcavity(p)._asdict()
    out["bad_cavity_crossing_pump"] = bad_cavity_crossing_pump(p)
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            result = run_sweep(_sweep_spec(args), workers=args.workers)
            if args.out:
                emit(result, args.format, args.out)
            else:
                sys.stdout.write(to_csv(result) if args.format == "csv" else to_json(result))
        elif args.command == "figure":
            for path in reproduce_figure(args.id, args.out, workers=args.workers):
                print(path)
        elif args.command == "regime":
            print(json.dumps(classify_regime(_params_from(args)).to_dict(), indent=2))
        else:
            print(json.dumps(_analytic_report(_params_from(args)), indent=2))
    except (CQEDError, OSError, json.JSONDecodeError) as exc:
        print(f"cqed-sim: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
