"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 I/O failure.
Every subcommand accepts ``--config FILE``, a JSON object whose keys mirror
the long flag names (``delta1``, ``gt-max`` or ``gt_max``, ...).  Flags given
on the command line take precedence over the file.
"""

import argparse
import json
import math
import sys

from .errors import ComEntangleError, DomainViolation
from .gridio import MalformedGrid, read_grid, write_grid, write_heatmap, grid_to_csv, grid_to_json
from .model import Scenario, SystemParams
from .oscillator import OscillatorSpec, com_factor, max_phase
from .scenarios import scenario_concurrence, verify_structure
from .sweep import DEFAULT_GT_MAX, DEFAULT_R, sweep_concurrence, sweep_factor

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3

PRESETS = {
    "fig2": {"kind": "factor", "r": DEFAULT_R},
    "fig3a": {"kind": "concurrence", "scenario": Scenario.BELL_VACUUM.value, "r": DEFAULT_R},
    "fig3b": {"kind": "concurrence", "scenario": Scenario.GG_ONE.value, "r": DEFAULT_R},
}


class CliError(Exception):
    def __init__(self, message, code=EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _add_plate_args(p):
    g = p.add_argument_group("plate oscillation")
    for i in (1, 2):
        g.add_argument(f"--r{i}", type=float, default=DEFAULT_R,
                       help=f"relative displacement zeta/sqrt(2n+1) of plate {i} (default %(default)s)")
        g.add_argument(f"--n{i}", type=int, default=0, help=f"quantum number of plate {i}")
        g.add_argument(f"--zeta{i}", type=float, default=None,
                       help=f"absolute displacement window of plate {i}; overrides --r{i}")
        g.add_argument(f"--delta{i}", type=float, default=None, help=f"initial phase of plate {i} (radians)")
    g.add_argument("--delta-frac", type=float, default=None,
                   help="set each unspecified phase to FRAC * asin(1 - r)")


def _plate_spec(args, i) -> OscillatorSpec:
    n = getattr(args, f"n{i}")
    zeta = getattr(args, f"zeta{i}")
    r = getattr(args, f"r{i}")
    delta = getattr(args, f"delta{i}")
    try:
        if zeta is not None:
            if n < 0:
                raise DomainViolation(f"quantum number n must be non-negative, got {n}")
            r = zeta / math.sqrt(2 * n + 1)
        if delta is None:
            delta = 0.0
            if args.delta_frac is not None:
                if not 0.0 < r < 1.0:
                    raise DomainViolation(f"relative displacement r must lie in (0, 1), got {r}")
                delta = args.delta_frac * max_phase(r)
        return OscillatorSpec(r=r, delta=delta, n=n)
    except DomainViolation as exc:
        raise DomainViolation(str(exc), plate=i) from None


def cmd_factor(args) -> int:
    cf = com_factor(_plate_spec(args, 1), _plate_spec(args, 2))
    _emit({"k": cf.k, "per_plate": list(cf.per_plate)})
    return EXIT_OK


def cmd_concurrence(args) -> int:
    s1, s2 = _plate_spec(args, 1), _plate_spec(args, 2)
    res = scenario_concurrence(args.scenario, args.gt, s1, s2, args.kz0)
    _emit(res.to_dict())
    return EXIT_OK


def _write_text(path, text) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def cmd_sweep(args) -> int:
    opts = {"kind": args.kind, "scenario": args.scenario, "r": args.r}
    if args.preset:
        opts.update(PRESETS[args.preset])
    if opts["kind"] == "factor":
        grid = sweep_factor(opts["r"], args.delta_steps, workers=args.workers)
    else:
        grid = sweep_concurrence(
            opts["scenario"], opts["r"], args.gt_max, args.gt_steps, args.delta_steps,
            kz0=args.kz0, workers=args.workers,
        )
    if args.preset:
        grid.metadata["preset"] = args.preset

    fmt = args.format
    if fmt is None:
        fmt = "json" if str(args.output).lower().endswith(".json") else "csv"
    if args.output in (None, "-"):
        _write_text("-", grid_to_json(grid) + "\n" if fmt == "json" else grid_to_csv(grid))
    else:
        try:
            write_grid(grid, args.output, fmt)
        except OSError as exc:
            raise CliError(f"cannot write {args.output}: {exc}", EXIT_IO) from None
    if args.svg:
        try:
            write_heatmap(grid, args.svg, title=args.preset)
        except OSError as exc:
            raise CliError(f"cannot write {args.svg}: {exc}", EXIT_IO) from None
    return EXIT_OK


def cmd_verify(args) -> int:
    params = SystemParams(g=args.g, kz0=args.kz0, omega=args.omega, n_max=args.n_max)
    if args.samples < 1:
        raise CliError(f"--samples must be >= 1, got {args.samples}")
    if not args.tol >= 0:
        raise CliError(f"--tol must be non-negative, got {args.tol}")
    report = verify_structure(params, samples=args.samples, tol=args.tol, seed=args.seed, workers=args.workers)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_heatmap(args) -> int:
    if not args.input:
        raise CliError("an input grid file is required")
    try:
        grid = read_grid(args.input, args.format)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc}", EXIT_IO) from None
    except UnicodeDecodeError as exc:
        raise CliError(f"{args.input} is not UTF-8 text: {exc}") from None
    try:
        write_heatmap(grid, args.output, title=args.title, x_label=args.x_label, y_label=args.y_label)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc}", EXIT_IO) from None
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="comentangle",
        description="Entanglement of two cavity-coupled atoms weighted by plate centre-of-mass oscillation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--config", default=None, help="JSON file of flag values (flags override)")
        p.set_defaults(func=func)
        subparsers[name] = p
        return p

    p = add("factor", cmd_factor, "centre-of-mass factor K of two plates")
    _add_plate_args(p)

    p = add("concurrence", cmd_concurrence, "corrected concurrence at one time point")
    p.add_argument("--scenario", choices=[s.value for s in Scenario], default=Scenario.BELL_VACUUM.value)
    p.add_argument("--gt", type=float, default=0.0, help="dimensionless time g*t")
    p.add_argument("--kz0", type=float, default=0.0, help="phase k*z0 (radians)")
    _add_plate_args(p)

    p = add("sweep", cmd_sweep, "evaluate K or a concurrence on a grid")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--kind", choices=["factor", "concurrence"], default="factor")
    p.add_argument("--scenario", choices=[s.value for s in Scenario], default=Scenario.BELL_VACUUM.value)
    p.add_argument("--r", type=float, default=DEFAULT_R, help="relative displacement of both plates")
    p.add_argument("--delta-steps", type=int, default=101)
    p.add_argument("--gt-max", type=float, default=DEFAULT_GT_MAX)
    p.add_argument("--gt-steps", type=int, default=201)
    p.add_argument("--kz0", type=float, default=0.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", "-o", default="-", help="grid file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--svg", default=None, help="also write an SVG heatmap here")

    p = add("verify", cmd_verify, "run the numeric oracle checks")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--kz0", type=float, default=0.0)
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = add("heatmap", cmd_heatmap, "render a sweep grid file as SVG")
    p.add_argument("input", nargs="?", default=None, help="grid CSV or JSON")
    p.add_argument("--output", "-o", required=False, default="heatmap.svg")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--title", default=None)
    p.add_argument("--x-label", default=None)
    p.add_argument("--y-label", default=None)

    return parser, subparsers


def _load_config(path, subparser) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise CliError(f"config {path} must hold a JSON object")
    known = {a.dest for a in subparser._actions} - {"help", "config", "func"}
    out = {}
    for key, value in cfg.items():
        dest = key.lstrip("-").replace("-", "_")
        if dest not in known:
            raise CliError(f"unknown config key {key!r}; expected one of {sorted(known)}")
        out[dest] = value
    return out


def main(argv=None) -> int:
    parser, subparsers = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
        if args.config:
            sp = subparsers[args.command]
            sp.set_defaults(**_load_config(args.config, sp))
            args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MalformedGrid as exc:
        print(f"error: malformed grid: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except DomainViolation as exc:
        print(f"error: DomainViolation: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ComEntangleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
