"""Command line front end.

    channeg choi --coupling rootswap --sharp hadamard --out c.json
    channeg negativity --choi c.json
    channeg sweep --family utheta --axis theta=0:6.283185307179586:201
    channeg cpmap --family rabi --axis t=0:6.283185307179586:33 --param kz=0
    channeg distance --expected cz --implemented czprime --param delta=3.141592653589793
    channeg convert --positivity 0.60

Data goes to stdout (or ``--out``); failures print one ``channeg: error: ...``
line to stderr and exit 1 (bad input or configuration) or 2 (numerical
non-convergence).
"""
import argparse
import json
import sys

import numpy as np

from . import choi as choi_mod
from .channelkit import (
    CZ,
    Alpha,
    CZDoublePrime,
    CZPrime,
    Hadamard,
    Product,
    Rabi,
    RootSwap,
    Rotation,
    RotationTheta,
    realize_coupling,
)
from .cmatrix import IDENTITY2, PAULI_X, PAULI_Y, PAULI_Z
from .errors import ChannegError, ConfigurationError, ConvergenceError
from .negativity import (
    negativity,
    negativity_distance,
    negativity_from_positivity,
    positivity_from_negativity,
)
from .sweep import FAMILIES, CP_TOL, Axis, SweepGrid, cp_map, run_sweep

# name -> (required, optional defaults, constructor)
COUPLINGS = {
    "rootswap": ((), {}, lambda p: RootSwap()),
    "cz": ((), {}, lambda p: CZ()),
    "czprime": (("delta",), {}, lambda p: CZPrime(p["delta"])),
    "czdoubleprime": (("delta", "xi"), {}, lambda p: CZDoublePrime(p["delta"], p["xi"])),
    "utheta": (("theta",), {}, lambda p: RotationTheta(p["theta"])),
    "rabi": (
        ("kz", "t"),
        {"nu": 0.0, "omega": 1.0},
        lambda p: Rabi(p["kz"], p["t"], p["nu"], p["omega"]),
    ),
}


def _bloch_state(p):
    b = (p["bx"], p["by"], p["bz"])
    return 0.5 * (IDENTITY2 + b[0] * PAULI_X + b[1] * PAULI_Y + b[2] * PAULI_Z)


SHARPS = {
    "hadamard": ((), {}, lambda p: Hadamard()),
    "rotation": (("phi",), {}, lambda p: Rotation(p["phi"])),
    "alpha": (("alpha",), {}, lambda p: Alpha(p["alpha"])),
    "product": ((), {"bx": 0.0, "by": 0.0, "bz": 1.0}, lambda p: Product(_bloch_state(p))),
}

load_choi = choi_mod.load_choi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: usage: {message}\n")


def _float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _assignment(text):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), _float(value)


def _axis(text):
    name, sep, spec = text.partition("=")
    parts = spec.split(":")
    if not sep or not name or len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected name=start:stop:count, got {text!r}")
    try:
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"axis count must be an integer, got {parts[2]!r}")
    return Axis(name.strip(), _float(parts[0]), _float(parts[1]), count)


def _param_dict(pairs, what="--param"):
    out = {}
    for name, value in pairs or ():
        if name in out:
            raise ConfigurationError(f"parameter '{name}' assigned more than once in {what}")
        out[name] = value
    return out


def _build(registry, kind, name, params):
    """Instantiate a coupling or sharp from ``params``, consuming the names it uses."""
    required, optional, make = registry[name]
    missing = [p for p in required if p not in params]
    if missing:
        raise ConfigurationError(f"{kind} '{name}' missing parameters: {missing}")
    values = dict(optional)
    for key in (*required, *optional):
        if key in params:
            values[key] = params.pop(key)
    return make(values)


def _coupling_and_sharp(coupling, sharp, params):
    params = dict(params)
    spec = _build(COUPLINGS, "coupling", coupling, params)
    smap = _build(SHARPS, "sharp", sharp, params)
    if params:
        raise ConfigurationError(
            f"unused parameters for coupling '{coupling}' and sharp '{sharp}': {sorted(params)}"
        )
    return spec, smap


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _dump(doc):
    return json.dumps(doc, indent=2) + "\n"


# --- subcommands ---------------------------------------------------------------


def cmd_choi(args):
    spec, smap = _coupling_and_sharp(args.coupling, args.sharp, _param_dict(args.param))
    c = choi_mod.assemble_choi(spec, smap)
    _emit(c.to_json() + "\n", args.out)


def cmd_negativity(args):
    if args.choi is not None:
        if args.coupling is not None or args.param:
            raise ConfigurationError("--choi cannot be combined with --coupling/--param")
        c = load_choi(args.choi)
    else:
        if args.coupling is None:
            raise ConfigurationError("one of --coupling or --choi is required")
        spec, smap = _coupling_and_sharp(args.coupling, args.sharp, _param_dict(args.param))
        c = choi_mod.assemble_choi(spec, smap)
    report = negativity(c)
    if args.format == "text":
        text = f"eta = {report.eta:.3g}\npositivity = {report.positivity:.3g}\n"
    else:
        doc = report.to_dict()
        doc["source"] = c.source
        text = _dump(doc)
    _emit(text, args.out)


def _grid(args):
    return SweepGrid(args.family, tuple(args.axis), _param_dict(args.param))


def _sweep_output(result, fmt, out):
    _emit(result.to_csv() if fmt == "csv" else _dump(result.to_dict()), out)


def cmd_sweep(args):
    _sweep_output(run_sweep(_grid(args)), args.format, args.out)


def cmd_cpmap(args):
    result = cp_map(_grid(args), eta_tol=args.eta_tol, exclude_trivial=args.exclude_trivial)
    _sweep_output(result, args.format, args.out)


def cmd_distance(args):
    files = (args.expected_choi, args.implemented_choi)
    if any(f is not None for f in files):
        if None in files:
            raise ConfigurationError("--expected-choi and --implemented-choi go together")
        if args.expected or args.implemented:
            raise ConfigurationError("Choi files cannot be combined with --expected/--implemented")
        report = negativity_distance(load_choi(files[0]), load_choi(files[1]))
    else:
        if args.expected is None or args.implemented is None:
            raise ConfigurationError("--expected and --implemented are both required")
        exp_spec, exp_sharp = _coupling_and_sharp(
            args.expected, args.sharp, _param_dict(args.expected_param, "--expected-param")
        )
        imp_spec, imp_sharp = _coupling_and_sharp(
            args.implemented, args.sharp, _param_dict(args.param)
        )
        report = negativity_distance(
            choi_mod.assemble_choi(exp_spec, exp_sharp),
            choi_mod.assemble_choi(imp_spec, imp_sharp),
            realize_coupling(exp_spec),
            realize_coupling(imp_spec),
        )
    _emit(_dump(report.to_dict()), args.out)


def cmd_convert(args):
    if args.positivity is not None:
        value = negativity_from_positivity(args.positivity)
    else:
        value = positivity_from_negativity(args.negativity)
    _emit(f"{value!r}\n", args.out)


# --- parser --------------------------------------------------------------------


def _add_out(p):
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")


def _add_params(p, help_text="parameter assignment, repeatable (radians for angles)"):
    p.add_argument(
        "--param", action="append", type=_assignment, metavar="NAME=VALUE", help=help_text
    )


def _add_coupling(p, required):
    p.add_argument("--coupling", choices=sorted(COUPLINGS), required=required,
                   help="composite system-bath unitary")
    p.add_argument("--sharp", choices=sorted(SHARPS), default="hadamard",
                   help="assignment map (default: hadamard)")
    _add_params(p)


def _add_grid(p):
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--axis", action="append", type=_axis, required=True,
                   metavar="NAME=START:STOP:COUNT", help="swept parameter, repeatable")
    _add_params(p, "fixed parameter value, repeatable")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out(p)


def build_parser():
    parser = _Parser(prog="channeg", description="Quantum channel negativity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("choi", help="assemble a Choi matrix and write it as JSON")
    _add_coupling(p, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("negativity", help="negativity report of a channel or a Choi file")
    _add_coupling(p, required=False)
    p.add_argument("--choi", metavar="PATH", help="Choi matrix JSON file instead of --coupling")
    p.add_argument("--format", choices=("json", "text"), default="json",
                   help="text rounds to 3 significant digits")
    _add_out(p)
    p.set_defaults(func=cmd_negativity)

    p = sub.add_parser("sweep", help="negativity over a parameter grid (CSV)")
    _add_grid(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cpmap", help="grid points with vanishing negativity")
    _add_grid(p)
    p.add_argument("--eta-tol", type=_float, default=CP_TOL,
                   help=f"negativity below this counts as completely positive (default {CP_TOL})")
    p.add_argument("--exclude-trivial", action="store_true",
                   help="rabi family: drop swept kz=0 and t=0 points")
    p.set_defaults(func=cmd_cpmap)

    p = sub.add_parser("distance", help="negativity distance and trace distance of two gates")
    p.add_argument("--expected", choices=sorted(COUPLINGS), help="intended coupling")
    p.add_argument("--implemented", choices=sorted(COUPLINGS), help="implemented coupling")
    p.add_argument("--sharp", choices=sorted(SHARPS), default="hadamard",
                   help="assignment map for both channels (default: hadamard)")
    _add_params(p, "implemented coupling (and sharp) parameter, repeatable")
    p.add_argument("--expected-param", action="append", type=_assignment, metavar="NAME=VALUE",
                   help="expected coupling (and sharp) parameter, repeatable")
    p.add_argument("--expected-choi", metavar="PATH", help="expected Choi matrix JSON file")
    p.add_argument("--implemented-choi", metavar="PATH", help="implemented Choi matrix JSON file")
    _add_out(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("convert", help="convert between positivity and negativity")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--positivity", type=_float, help="positivity in [0, 1]")
    group.add_argument("--negativity", type=_float, help="negativity in [0, 1/2]")
    _add_out(p)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        args.func(args)
    except ConvergenceError as exc:
        print(f"channeg: error: convergence: {exc}", file=sys.stderr)
        return 2
    except ChannegError as exc:
        print(f"channeg: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"channeg: error: io: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
