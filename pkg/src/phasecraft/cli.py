"""Command-line front end.

Every subcommand emits CSV (comment-prefixed metadata header) or JSON with
the same records; reruns with identical configuration are byte-identical.
Exit code 0 when every requested row computed, 2 on partial failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .fock import TruncationPolicy
from .interferometer import (
    MeasurementConfig,
    SensitivityCurve,
    classical_fi,
    fi_sensitivity_curve,
    parity_sensitivity,
    parity_sensitivity_curve,
)
from .metrology import PhaseGenerator, qfi_report
from .probes import (
    EnergyDomainError,
    parse_state_spec,
    probe_from_spec,
    solve_energy_constraint,
)
from .study import DEFAULT_PHI_EVAL, optimize_qooq_n, sample_one, sample_random_components

DEFAULT_FIG_STATES = ["noon", "aooa", "soos", "qooq:N=8", "qooq:N=100"]
DEFAULT_SEED = 12345


def tail_policy() -> TruncationPolicy:
    tol = os.environ.get("PHASECRAFT_TAIL_TOL")
    if tol is None:
        return TruncationPolicy()
    return TruncationPolicy(tail_tolerance=float(tol))


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return repr(value)
    return str(value)


def parse_phi_grid(text: str) -> tuple[float, float, int]:
    start, stop, points = text.split(":")
    return float(start), float(stop), int(points)


def parse_n_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


class OutputWriter:
    def __init__(self, command: str, params: dict, fmt: str, out_path: str | None):
        self.metadata = {
            "version": __version__,
            "command": command,
            "params": {k: v for k, v in sorted(params.items())},
            "tail_tolerance": tail_policy().tail_tolerance,
            "generator": PhaseGenerator.TWO_ARM_SYMMETRIC.value,
        }
        self.fmt = fmt
        self.out_path = out_path
        self.rows: list[dict] = []

    def add(self, row: dict):
        self.rows.append(row)

    @property
    def failed(self) -> bool:
        return any("error" in row for row in self.rows)

    def emit(self):
        if self.fmt == "json":
            rows = [
                {k: ("inf" if isinstance(v, float) and math.isinf(v) else v) for k, v in row.items()}
                for row in self.rows
            ]
            text = json.dumps(
                {"metadata": self.metadata, "rows": rows}, indent=2, sort_keys=True
            ) + "\n"
        else:
            lines = [f"# phasecraft {self.metadata['version']}"]
            lines.append(f"# command: {self.metadata['command']}")
            lines.append(f"# params: {json.dumps(self.metadata['params'], sort_keys=True)}")
            lines.append(f"# tail_tolerance: {_fmt(self.metadata['tail_tolerance'])}")
            lines.append(f"# generator: {self.metadata['generator']}")
            columns: list[str] = []
            for row in self.rows:
                for key in row:
                    if key not in columns:
                        columns.append(key)
            lines.append(",".join(columns))
            for row in self.rows:
                lines.append(",".join(_fmt(row.get(col, "")) for col in columns))
            text = "\n".join(lines) + "\n"
        if self.out_path:
            with open(self.out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _family_token(state: str) -> tuple[str, int | None]:
    """Parse a fig1/fig3 family token: noon | aooa | soos | qooq:N=8."""
    name, _, args = state.partition(":")
    name = name.strip().lower()
    n = None
    if args:
        for item in args.split(","):
            k, _, v = item.partition("=")
            if k.strip() == "N":
                n = int(v)
    family = {"noon": "number", "aooa": "coherent", "soos": "squeezed", "qooq": "one_n"}[name]
    return family, n


def _probe_for(state: str, n_av: float):
    family, n = _family_token(state)
    spec = solve_energy_constraint(family, n_av, n=n)
    return probe_from_spec(spec, tail_policy())


def cmd_fig1(args, writer: OutputWriter):
    grid = np.logspace(math.log10(args.nav_min), math.log10(args.nav_max), args.nav_points)
    for state in args.state:
        family, _ = _family_token(state)
        if family == "number":
            # NOON is defined at integer N only; emit those points plus the
            # analytic N_av^2 envelope over the whole grid
            for n in range(max(1, math.ceil(args.nav_min)), math.floor(args.nav_max) + 1):
                writer.add({"state": state, "n_av": float(n), "f_q": float(n * n), "qcrb": 1.0 / (n * n)})
            for n_av in grid:
                writer.add(
                    {
                        "state": "noon-envelope",
                        "n_av": float(n_av),
                        "f_q": float(n_av**2),
                        "qcrb": float(1.0 / n_av**2),
                    }
                )
            continue
        for n_av in grid:
            try:
                probe = _probe_for(state, float(n_av))
                report = qfi_report(probe)
                writer.add(
                    {"state": state, "n_av": float(n_av), "f_q": report.f_q, "qcrb": report.qcrb}
                )
            except EnergyDomainError:
                # grid point below the family's reachable energy; the curve
                # simply does not extend there
                continue
            except ValueError as exc:
                writer.add({"state": state, "n_av": float(n_av), "error": str(exc)})


def cmd_fig3(args, writer: OutputWriter):
    start, stop, points = args.phi_grid
    config = MeasurementConfig(args.T, start, stop, points)
    make = parity_sensitivity_curve if args.measurement == "parity" else fi_sensitivity_curve
    snl_value = 1.0 / args.nav
    for state in args.state:
        try:
            probe = _probe_for(state, args.nav)
            curve = make(probe, config, label=state)
        except ValueError as exc:
            writer.add({"label": state, "error": str(exc)})
            continue
        for phi, sens in zip(curve.phis, curve.values):
            writer.add(
                {
                    "phi": float(phi),
                    "sensitivity": float(sens),
                    "snl": snl_value,
                    "label": state,
                    "T": args.T,
                    "n_av": args.nav,
                }
            )
    for phi in config.grid():
        writer.add(
            {
                "phi": float(phi),
                "sensitivity": snl_value,
                "snl": snl_value,
                "label": "snl",
                "T": args.T,
                "n_av": args.nav,
            }
        )


def cmd_fig4(args, writer: OutputWriter):
    if args.mode == "optimize":
        for t in args.T_list:
            for n_av in args.nav_list:
                try:
                    result = optimize_qooq_n(t, n_av, args.N_range, args.phi_eval)
                    writer.add(
                        {
                            "T": t,
                            "n_av": n_av,
                            "best_n_list": ";".join(str(n) for n in sorted(result.best_n_set)),
                            "best_sensitivity": result.best_sensitivity,
                        }
                    )
                except (ValueError, RuntimeError) as exc:
                    writer.add({"T": t, "n_av": n_av, "error": str(exc)})
        return
    _emit_samples(args, writer)


def _sample_worker(task) -> tuple:
    seed, index, support, t, phi_eval = task
    rec = sample_one(seed, index, support, t, phi_eval)
    return rec.sample_id, rec.n_av, rec.inv_fi, rec.weights_digest


def _emit_samples(args, writer: OutputWriter):
    jobs = max(1, getattr(args, "jobs", 1))
    if jobs == 1:
        records = sample_random_components(args.count, args.support, args.seed, args.T, args.phi_eval)
        rows = [(r.sample_id, r.n_av, r.inv_fi, r.weights_digest) for r in records]
    else:
        tasks = [(args.seed, i, args.support, args.T, args.phi_eval) for i in range(args.count)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # per-sample seeding keeps results identical for any job count;
            # map preserves submission order
            rows = list(pool.map(_sample_worker, tasks, chunksize=max(1, args.count // (8 * jobs))))
    for sample_id, n_av, inv_fi, digest in rows:
        writer.add({"id": sample_id, "n_av": n_av, "inv_fi": inv_fi, "digest": digest})


def cmd_generate(args, writer: OutputWriter):
    from .generation import decomposable_generation, generate_qooq_from_noon, generate_soos

    if args.scheme == "soos":
        report = generate_soos(args.r, args.theta, args.x, tail_policy())
        params = {"r": args.r, "theta": args.theta, "x": args.x}
    elif args.scheme == "qooq":
        report = generate_qooq_from_noon(args.N, args.alpha, tail_policy())
        params = {"N": args.N, "alpha": args.alpha}
    else:
        recipe = [("squeeze", args.r, args.theta)]
        report = decomposable_generation(recipe, args.x)
        params = {"recipe": "squeeze", "r": args.r, "theta": args.theta, "x": args.x}

    amps = report.output.amps
    support = np.argwhere(np.abs(amps) > 1e-9 * np.abs(amps).max())
    writer.add(
        {
            "scheme": args.scheme,
            "parameters": json.dumps(params, sort_keys=True),
            "fidelity": report.fidelity,
            "success_probability": report.success_probability,
            "degenerate": report.degenerate,
            "output_support": ";".join(f"({a},{b})" for a, b in support.tolist()),
        }
    )


def cmd_qfi(args, writer: OutputWriter):
    for state in args.state:
        try:
            probe = probe_from_spec(parse_state_spec(state), tail_policy())
            report = qfi_report(probe)
            writer.add(
                {
                    "state": state,
                    "n_av": report.n_av,
                    "f_q": report.f_q,
                    "qcrb": report.qcrb,
                    "mandel_q": report.mandel_q,
                    "p0": report.p0,
                }
            )
        except ValueError as exc:
            writer.add({"state": state, "error": str(exc)})


def cmd_curve(args, writer: OutputWriter):
    if args.phi is not None:
        phis = np.array([args.phi])
    else:
        start, stop, points = args.phi_grid
        phis = MeasurementConfig(args.T, start, stop, points).grid()
    for state in args.state:
        try:
            probe = probe_from_spec(parse_state_spec(state), tail_policy())
            if args.command == "parity":
                values = parity_sensitivity(probe, phis, args.T)
            else:
                values = 1.0 / classical_fi(probe, phis, args.T)
            curve = SensitivityCurve(phis, values, state, 1.0 / probe.n_av)
        except ValueError as exc:
            writer.add({"label": state, "error": str(exc)})
            continue
        for phi, sens in zip(curve.phis, curve.values):
            writer.add(
                {
                    "phi": float(phi),
                    "sensitivity": float(sens),
                    "snl": curve.snl,
                    "label": state,
                    "T": args.T,
                    "n_av": probe.n_av,
                }
            )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phasecraft")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--config", default=None, help="JSON config file; flags override it")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("fig1", help="QCRB vs average energy for the named families")
    common(p)
    p.add_argument("--state", action="append", default=None)
    p.add_argument("--nav-min", type=float, default=0.5)
    p.add_argument("--nav-max", type=float, default=5.0)
    p.add_argument("--nav-points", type=int, default=60)

    p = sub.add_parser("fig3", help="sensitivity vs phase under loss")
    common(p)
    p.add_argument("--measurement", choices=["parity", "counting"], default="parity")
    p.add_argument("--state", action="append", default=None)
    p.add_argument("--nav", type=float, default=2.0)
    p.add_argument("--T", type=float, default=0.9)
    p.add_argument("--phi-grid", type=parse_phi_grid, default=(0.0, 2.0 * math.pi, 1000))

    p = sub.add_parser("fig4", help="optimal-N table or random-component scatter")
    common(p)
    p.add_argument("--mode", choices=["optimize", "sample"], default="optimize")
    p.add_argument("--T", type=float, default=0.9)
    p.add_argument("--T-list", type=float, nargs="+", default=[0.95, 0.9, 0.85, 0.8])
    p.add_argument("--nav-list", type=float, nargs="+", default=[1.5, 2.0, 2.5, 3.0])
    p.add_argument("--N-range", type=parse_n_range, default=(2, 40))
    p.add_argument("--phi-eval", type=float, default=DEFAULT_PHI_EVAL)
    p.add_argument("--count", type=int, default=5000)
    p.add_argument("--support", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("generate", help="simulate a state-generation scheme")
    common(p)
    p.add_argument("--scheme", choices=["soos", "qooq", "decomposable"], required=True)
    p.add_argument("--r", type=float, default=0.3)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--x", type=float, default=math.pi / 2)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--alpha", type=float, default=1.0)

    p = sub.add_parser("qfi", help="QFI report for explicit states")
    common(p)
    p.add_argument("--state", action="append", required=True)

    for name in ("parity", "fi"):
        p = sub.add_parser(name, help=f"{name} sensitivity curve for explicit states")
        common(p)
        p.add_argument("--state", action="append", required=True)
        p.add_argument("--T", type=float, default=1.0)
        p.add_argument("--phi", type=float, default=None, help="single evaluation phase")
        p.add_argument("--phi-grid", type=parse_phi_grid, default=(0.0, 2.0 * math.pi, 1000))

    p = sub.add_parser("sample", help="random-component scatter study")
    common(p)
    p.add_argument("--count", type=int, default=5000)
    p.add_argument("--support", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--T", type=float, default=0.9)
    p.add_argument("--phi-eval", type=float, default=DEFAULT_PHI_EVAL)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str], args: argparse.Namespace):
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        config = json.load(fh)
    explicit = {a.lstrip("-").replace("-", "_").partition("=")[0] for a in argv if a.startswith("--")}
    for key, value in config.items():
        attr = key.replace("-", "_")
        if attr in explicit or not hasattr(args, attr):
            continue
        if attr == "phi_grid" and isinstance(value, str):
            value = parse_phi_grid(value)
        if attr == "N_range" and isinstance(value, str):
            value = parse_n_range(value)
        setattr(args, attr, value)
    return args


HANDLERS = {
    "fig1": cmd_fig1,
    "fig3": cmd_fig3,
    "fig4": cmd_fig4,
    "generate": cmd_generate,
    "qfi": cmd_qfi,
    "parity": cmd_curve,
    "fi": cmd_curve,
    "sample": _emit_samples,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _apply_config(parser, argv, args)
    if getattr(args, "state", None) is None and args.command in ("fig1", "fig3"):
        args.state = list(DEFAULT_FIG_STATES)

    params = {
        k: v
        for k, v in vars(args).items()
        # jobs is an execution detail: the records must not depend on it
        if k not in ("command", "out", "format", "config", "jobs") and v is not None
    }
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()}
    fmt = args.format if args.format == "json" or args.command != "generate" else "json"
    writer = OutputWriter(args.command, params, fmt, args.out)
    try:
        HANDLERS[args.command](args, writer)
    except ValueError as exc:
        parser.error(str(exc))
    writer.emit()
    return 2 if writer.failed else 0


if __name__ == "__main__":
    sys.exit(main())
