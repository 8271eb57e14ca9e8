"""Command-line front end.

Three subcommands:

  compute <file>          both bounds plus the witness decomposition, as JSON
  verify --axiom <tag>    randomized axiom suites or the bilinearity probe,
                          one JSON line per check plus a summary line
  sweep --grid N --out F  CSV landscape of the binary family [[a,c],[1-a,1-c]]
                          under the output-swap tangent

Exit codes: 0 success, 2 bad input (validation or arguments), 3 solver
non-convergence (compute only).  Numbers serialize with 12 significant
digits; infinities become the string "inf".
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .channels import Channel, LocalData, TangentChannel, local_data_from_dict
from .harness import probe_bilinearity, run_axiom_trials, TAGS
from .metrics import MetricReport, SolverConfig, compute_report

_CONFIG_KEYS = ("tol", "max_iter", "grid_fallback_dim", "svd_cutoff")

FLIP_TANGENT = np.array([[-1.0, 1.0], [1.0, -1.0]])


class InstanceError(ValueError):
    """Raised when an instance file cannot be parsed into valid local data."""


@dataclass(frozen=True)
class InstanceFile:
    """Parsed instance: the local data plus any solver settings it carries."""

    data: LocalData
    config: SolverConfig


@dataclass(frozen=True)
class SweepRow:
    a: float
    c: float
    gmin: float
    gmax: float
    gap: float
    converged: bool


def _solver_config_from_dict(obj: dict) -> SolverConfig:
    unknown = set(obj) - set(_CONFIG_KEYS)
    if unknown:
        raise InstanceError(f"unknown solver config keys: {sorted(unknown)}")
    return SolverConfig(**obj)


def load_instance(path: str) -> InstanceFile:
    """Parse an instance file, mapping any defect to InstanceError."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise InstanceError(f"{path}: top level must be a JSON object")
    try:
        data = local_data_from_dict(obj)
    except ValueError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    solver = obj.get("solver", {})
    if not isinstance(solver, dict):
        raise InstanceError(f"{path}: 'solver' must be an object")
    try:
        config = _solver_config_from_dict(solver)
    except TypeError as exc:
        raise InstanceError(f"{path}: bad solver config: {exc}") from exc
    return InstanceFile(data=data, config=config)


# --- deterministic serialization ------------------------------------------------


def _num(x):
    """12 significant digits; infinities as strings for JSON portability."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return 0.0
    return float(f"{x:.12g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {key: _clean(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(val) for val in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj))


def _csv_num(x: float) -> str:
    return f"{float(x):.12g}"


# --- subcommands -----------------------------------------------------------------


def _config_from_args(args, base: SolverConfig) -> SolverConfig:
    updates = {}
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            updates[key] = val
    if not updates:
        return base
    merged = {key: getattr(base, key) for key in _CONFIG_KEYS}
    merged.update(updates)
    return SolverConfig(**merged)


def _report_payload(report: MetricReport) -> dict:
    dec = report.gmax_witness
    return {
        "gmin": report.gmin,
        "gmin_witness": report.gmin_witness,
        "gmax": report.gmax,
        "decomposition": None
        if dec is None
        else {"q": dec.q, "delta": dec.delta},
        "converged": report.converged,
        "iterations": report.iterations,
        "gap": report.gap,
    }


def cmd_compute(args) -> int:
    try:
        inst = load_instance(args.path)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    config = _config_from_args(args, inst.config)
    report = compute_report(inst.data, config)
    print(dumps(_report_payload(report)))
    return 0 if report.converged else 3


def cmd_verify(args) -> int:
    config = _config_from_args(args, SolverConfig())
    if args.axiom == "BILINEAR":
        probe = probe_bilinearity(args.t, args.s, samples=args.samples, config=config)
        ok = (
            abs(probe.c1) <= 1e-3
            and abs(probe.c2) <= 1e-3
            and abs(probe.c0 - (1.0 / args.t + 1.0 / (1.0 - args.t))) <= 1e-6
        )
        print(
            dumps(
                {
                    "tag": "BILINEAR",
                    "t": probe.t,
                    "s": probe.s,
                    "radius": probe.radius,
                    "coefficients": probe.coefficients,
                    "gmax_values": probe.gmax_values,
                    "gmin_values": probe.gmin_values,
                    "c0": probe.c0,
                    "c1": probe.c1,
                    "c2": probe.c2,
                    "c2_if_bilinear": probe.c2_if_bilinear,
                    "verdict": "pass" if ok else "fail",
                }
            )
        )
        return 0 if ok else 1
    records = run_axiom_trials(
        args.axiom,
        trials=args.trials,
        seed=args.seed,
        k=args.k,
        l=args.l,
        metric=args.metric,
        config=config,
    )
    fails = 0
    vacuous = 0
    for record in records:
        fails += record["verdict"] == "fail"
        vacuous += record["verdict"] == "vacuous"
        print(dumps(record))
    print(
        dumps(
            {
                "tag": args.axiom,
                "trials": len(records),
                "passes": len(records) - fails - vacuous,
                "fails": fails,
                "vacuous": vacuous,
            }
        )
    )
    return 0 if fails == 0 else 1


def sweep_rows(n: int, tangent: TangentChannel | None = None, config: SolverConfig | None = None) -> Iterable[SweepRow]:
    """Bound landscape over the interior grid a, c in {i/(n+1)} with a + c <= 1."""
    tangent = tangent if tangent is not None else TangentChannel(FLIP_TANGENT)
    values = [(i + 1) / (n + 1) for i in range(n)]
    for a in values:
        for c in values:
            if a + c > 1.0 + 1e-9:
                continue
            data = LocalData(Channel([[a, c], [1.0 - a, 1.0 - c]]), tangent)
            report = compute_report(data, config)
            yield SweepRow(
                a=a,
                c=c,
                gmin=report.gmin,
                gmax=report.gmax,
                gap=report.gmax - report.gmin,
                converged=report.converged,
            )


def cmd_sweep(args) -> int:
    tangent = None
    if args.tangent is not None:
        try:
            with open(args.tangent) as fh:
                obj = json.load(fh)
            tangent = TangentChannel(np.array(obj, dtype=float))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            print(f"error: bad tangent file: {exc}", file=sys.stderr)
            return 2
    config = _config_from_args(args, SolverConfig())
    lines = ["a,c,gmin,gmax,gap,converged"]
    for row in sweep_rows(args.grid, tangent, config):
        lines.append(
            ",".join(
                [
                    _csv_num(row.a),
                    _csv_num(row.c),
                    _csv_num(row.gmin),
                    _csv_num(row.gmax),
                    _csv_num(row.gap),
                    "true" if row.converged else "false",
                ]
            )
        )
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="duality-gap target")
    parser.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    parser.add_argument("--grid-fallback-dim", dest="grid_fallback_dim", type=int, default=None)
    parser.add_argument("--svd-cutoff", dest="svd_cutoff", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="channel-metrics",
        description="Fisher-information bounds for finite classical channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="both bounds for one instance file")
    p_compute.add_argument("path", help="JSON instance file")
    _add_solver_flags(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="randomized axiom suite or bilinearity probe")
    p_verify.add_argument("--axiom", required=True, choices=list(TAGS) + ["BILINEAR"])
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--k", type=int, default=2)
    p_verify.add_argument("--l", type=int, default=2)
    p_verify.add_argument("--metric", choices=["gmin", "gmax"], default="gmin")
    p_verify.add_argument("--t", type=float, default=0.25, help="bilinearity base point")
    p_verify.add_argument("--s", type=float, default=0.4, help="bilinearity base point")
    p_verify.add_argument("--samples", type=int, default=9)
    _add_solver_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="CSV landscape of the binary family")
    p_sweep.add_argument("--grid", type=int, required=True, help="grid points per axis")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--tangent", default=None, help="JSON file with a 2x2 tangent matrix")
    _add_solver_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and args.grid < 2:
        print("error: --grid must be at least 2", file=sys.stderr)
        return 2
    return args.func(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
