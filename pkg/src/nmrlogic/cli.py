"""Command-line front end.

Subcommands: ``grid`` (CSV export of observable grids), ``classify``
(gate truth table, canalising profile, class and orbit), ``synthesize``
(search gate realizations over a candidate grid) and ``verify``
(recompute the built-in reference values and capability claims).

Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 no solution
found, 4 verification failure.

Angles are accepted as decimal radians or as rational multiples of pi
("pi", "3/2pi", "-1/2pi").  Gate ids follow the truth-table ordering
documented in `nmrlogic.gates` (output column for inputs 00, 01, 10, 11
read as binary, most significant first).
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from typing import Optional, Sequence

import numpy as np

from . import gates, synthesis
from .observables import (
    GridSpec,
    InitialState,
    ObservableKind,
    ONE_PULSE_PARAMS,
    scenario_components,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NO_SOLUTION = 3
EXIT_VERIFY_FAILED = 4

_ANGLE_RE = re.compile(
    r"^(?P<sign>[+-])?(?P<num>\d+(?:\.\d+)?)?(?:/(?P<den>\d+(?:\.\d+)?))?\s*pi$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Radians from a decimal or a rational multiple of pi like '3/2pi'."""
    token = text.strip()
    m = _ANGLE_RE.match(token)
    if m:
        value = math.pi
        if m.group("num"):
            value *= float(m.group("num"))
        if m.group("den"):
            den = float(m.group("den"))
            if den == 0:
                raise ValueError(f"zero denominator in angle {text!r}")
            value /= den
        if m.group("sign") == "-":
            value = -value
        return value
    try:
        return float(token)
    except ValueError:
        raise ValueError(
            f"cannot parse angle {text!r}; use radians or 'p/q pi' (e.g. '3/2pi')"
        ) from None


def parse_grid(text: str) -> GridSpec:
    """GridSpec from 'start:step:count'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:step:count, got {text!r}")
    return GridSpec(parse_angle(parts[0]), parse_angle(parts[1]), int(parts[2]))


def parse_fix(text: str) -> tuple:
    if "=" not in text:
        raise ValueError(f"--fix expects param=angle, got {text!r}")
    name, value = text.split("=", 1)
    return name.strip(), parse_angle(value)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on bad usage, not argparse's 2
        raise _UsageError(message)


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--initial", choices=["z", "x"], help="initial state")
    parser.add_argument("--pulses", type=int, choices=[1, 2], help="pulse count")
    parser.add_argument(
        "--observable", choices=["mx", "my", "mxy"], help="detected quantity"
    )
    parser.add_argument(
        "--inputs",
        help="comma-separated parameters bound to logic inputs A,B "
        "(phi,beta for 1 pulse; phi1,beta1,phi2,beta2 for 2 pulses)",
    )
    parser.add_argument(
        "--fix",
        action="append",
        default=None,
        metavar="PARAM=ANGLE",
        help="fix a non-input parameter (repeatable)",
    )
    parser.add_argument("--lambda", dest="lambda_b", help="polarization scale")
    parser.add_argument("--grid", help="candidate grid start:step:count")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--tol", help="numeric tolerance override")
    parser.add_argument("--config", help="key=value config file; flags win")


_EPILOG = (
    "gate ids read the truth-table output column for inputs "
    "(0,0),(0,1),(1,0),(1,1) as binary, most significant bit first "
    "(B=5, XOR=6, NAND=14); angles are radians or multiples of pi "
    "like '3/2pi'; grids are start:step:count"
)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="nmrlogic", description=__doc__.splitlines()[0], epilog=_EPILOG
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_grid = sub.add_parser(
        "grid", help="export an observable grid as CSV", epilog=_EPILOG
    )
    _add_scenario_flags(p_grid)

    p_classify = sub.add_parser(
        "classify", help="classify a boolean gate", epilog=_EPILOG
    )
    p_classify.add_argument("gate", help="gate name or id 0-15")

    p_synth = sub.add_parser(
        "synthesize", help="search gate realizations", epilog=_EPILOG
    )
    p_synth.add_argument("gate", help="gate name or id 0-15")
    _add_scenario_flags(p_synth)

    p_verify = sub.add_parser(
        "verify", help="recompute built-in reference values", epilog=_EPILOG
    )
    _add_scenario_flags(p_verify)
    return parser


def _load_config(path: str) -> dict:
    values: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line is not key=value: {line!r}")
            key, value = line.split("=", 1)
            key = key.strip().lower()
            value = value.strip()
            if key == "fix":
                values.setdefault("fix", []).append(value)
            else:
                values[key] = value
    return values


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if not getattr(args, "config", None):
        return args
    config = _load_config(args.config)
    mapping = {
        "initial": "initial",
        "pulses": "pulses",
        "observable": "observable",
        "inputs": "inputs",
        "lambda": "lambda_b",
        "grid": "grid",
        "out": "out",
        "tol": "tol",
        "fix": "fix",
    }
    for key, attr in mapping.items():
        if key not in config:
            continue
        if getattr(args, attr, None) is None:
            value = config[key]
            if attr == "pulses":
                value = int(value)
            setattr(args, attr, value)
    return args


def _scenario_from_args(args: argparse.Namespace) -> synthesis.Scenario:
    initial = InitialState(args.initial or "z")
    pulses = args.pulses or 1
    observable = ObservableKind(args.observable or "mx")
    if args.inputs:
        inputs = tuple(p.strip() for p in args.inputs.split(","))
    elif pulses == 1:
        inputs = ONE_PULSE_PARAMS
    else:
        raise ValueError("--inputs is required for two-pulse scenarios")
    fixed = tuple(parse_fix(item) for item in (args.fix or []))
    lambda_b = float(args.lambda_b) if args.lambda_b is not None else 1.0
    return synthesis.Scenario(
        initial=initial,
        pulses=pulses,
        observable=observable,
        inputs=inputs,
        fixed=fixed,
        lambda_b=lambda_b,
    )


def _default_axis(param: str, count: int = 101) -> GridSpec:
    if param.startswith("phi"):
        return GridSpec(0.0, 4 * math.pi / count, count)
    return GridSpec(-2 * math.pi, 4 * math.pi / count, count)


def _open_out(path: Optional[str]):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def cmd_grid(args: argparse.Namespace) -> int:
    scenario = _scenario_from_args(args)
    if args.grid:
        grid_a = grid_b = parse_grid(args.grid)
    else:
        grid_a = _default_axis(scenario.inputs[0])
        grid_b = _default_axis(scenario.inputs[1])
    avals = grid_a.values()
    bvals = grid_b.values()
    mesh_a, mesh_b = np.meshgrid(avals, bvals, indexing="ij")
    mx, my, _ = scenario_components(
        scenario.initial,
        scenario.pulses,
        scenario.inputs,
        scenario.fixed_values,
        mesh_a,
        mesh_b,
        scenario.lambda_b,
    )
    mxy = np.hypot(mx, my)

    try:
        handle, owned = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        header_a, header_b = scenario.inputs
        handle.write(f"{header_a},{header_b},Mx,My,Mxy\n")
        for i in range(grid_a.count):
            for j in range(grid_b.count):
                handle.write(
                    f"{avals[i]:.12g},{bvals[j]:.12g},"
                    f"{mx[i, j]:.12g},{my[i, j]:.12g},{mxy[i, j]:.12g}\n"
                )
    finally:
        if owned:
            handle.close()
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        tt = gates.parse_gate(args.gate)
    except ValueError:
        print(f"error: unknown gate {args.gate!r}", file=sys.stderr)
        print(
            "valid tokens: " + ", ".join(gates.valid_gate_tokens()), file=sys.stderr
        )
        return EXIT_USAGE
    profile = gates.canalising_counts(tt)
    cls = gates.gate_class(tt)
    members = sorted(gates.orbit(tt), key=lambda g: g.gate_id)
    print(f"gate {tt.name} (id {tt.gate_id})")
    print("  A B | out")
    for a in (0, 1):
        for b in (0, 1):
            print(f"  {a} {b} |  {int(tt(a, b))}")
    print(f"canalising input values: A={profile.count_a}, B={profile.count_b}")
    print(f"class: {cls.value} ({cls.name.lower()})")
    print(
        "orbit members: "
        + ", ".join(f"{g.name} (id {g.gate_id})" for g in members)
    )
    return EXIT_OK


def _format_level_map(assignment: synthesis.GateAssignment) -> str:
    return " ".join(f"{level:.12g}->{int(bit)}" for level, bit in assignment.level_map)


def cmd_synthesize(args: argparse.Namespace) -> int:
    try:
        tt = gates.parse_gate(args.gate)
    except ValueError:
        print(f"error: unknown gate {args.gate!r}", file=sys.stderr)
        print(
            "valid tokens: " + ", ".join(gates.valid_gate_tokens()), file=sys.stderr
        )
        return EXIT_USAGE
    scenario = _scenario_from_args(args)
    grid = parse_grid(args.grid) if args.grid else synthesis.DEFAULT_SYNTH_GRID
    tol = float(args.tol) if args.tol else synthesis.DEFAULT_LEVEL_TOL
    assignments = synthesis.synthesize(scenario, tt, grid, tol)

    if not assignments:
        print(
            f"no {tt.name} assignments on grid "
            f"{grid.start:.12g}:{grid.step:.12g}:{grid.count}"
        )
        return EXIT_NO_SOLUTION

    if args.out:
        try:
            handle = open(args.out, "w", encoding="utf-8", newline="")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        with handle:
            handle.write("a0,a1,b0,b1,level0,level1\n")
            for asg in assignments:
                levels = {int(bit): level for level, bit in asg.level_map}
                handle.write(
                    f"{asg.a_values[0]:.12g},{asg.a_values[1]:.12g},"
                    f"{asg.b_values[0]:.12g},{asg.b_values[1]:.12g},"
                    f"{levels.get(0, float('nan')):.12g},"
                    f"{levels.get(1, float('nan')):.12g}\n"
                )
    print(
        f"{len(assignments)} {tt.name} assignment(s), class "
        f"{gates.gate_class(tt).value}"
    )
    for asg in assignments:
        print(
            f"A=({asg.a_values[0]:.12g}, {asg.a_values[1]:.12g}) "
            f"B=({asg.b_values[0]:.12g}, {asg.b_values[1]:.12g}) "
            f"levels {_format_level_map(asg)}"
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    lambda_b = float(args.lambda_b) if args.lambda_b is not None else 1.0
    tol = float(args.tol) if args.tol else 1e-10
    grid = parse_grid(args.grid) if args.grid else synthesis.DEFAULT_SYNTH_GRID
    print(
        f"verification run: lambda={lambda_b:.12g}, tol={tol:.3g}, "
        f"search grid {grid.start:.12g}:{grid.step:.12g}:{grid.count}"
    )
    checks = synthesis.verify_reference_tables(lambda_b=lambda_b, tol=tol)
    checks += synthesis.capability_checks(grid=grid, lambda_b=lambda_b)
    failures = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.name}: {check.detail}")
        failures += not check.passed
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = _merge_config(args)
        if args.command == "grid":
            return cmd_grid(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "synthesize":
            return cmd_synthesize(args)
        if args.command == "verify":
            return cmd_verify(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    raise RuntimeError(f"unhandled command {args.command!r}")


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
