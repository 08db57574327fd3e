"""Command-line front end: single points, coupling sweeps, coupling-detuning
grids, and low-lying spectra, emitted as deterministic CSV or JSON.

Output formatting is pinned (17 significant digits, scientific notation,
comma separators, LF line endings) so identical flags always produce
identical bytes; sector labels are serialized as plain decimals (-0.5,
-10.0) to keep every column numeric.

Exit codes: 0 success, 2 flag validation, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .exact import (
    SolverError,
    fidelity,
    ground_state,
    observables_from_state,
    spectrum,
)
from .model import ModelParams
from .projected import build_state, observables, select_lambda

__all__ = ["SweepRecord", "compute_record", "main", "console_entry"]

CSV_HEADER = (
    "gamma,delta,n_atoms,lambda_proj,lambda_exact,e_proj,e_exact,"
    "n_mean_proj,n_mean_exact,n_var_proj,n_var_exact,"
    "jz_mean_proj,jz_mean_exact,jz_var_proj,jz_var_exact,"
    "xi_proj,xi_exact,se_proj,se_exact,fidelity"
)

_NAN = float("nan")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: projected and exact observables plus their fidelity.

    Columns computed for a skipped method are NaN (CSV) / null (JSON).
    """

    gamma: float
    delta: float
    n_atoms: int
    lambda_proj: float
    lambda_exact: float
    e_proj: float
    e_exact: float
    n_mean_proj: float
    n_mean_exact: float
    n_var_proj: float
    n_var_exact: float
    jz_mean_proj: float
    jz_mean_exact: float
    jz_var_proj: float
    jz_var_exact: float
    xi_proj: float
    xi_exact: float
    se_proj: float
    se_exact: float
    fidelity: float

    def validate(self) -> None:
        if math.isfinite(self.fidelity) and not 0.0 <= self.fidelity <= 1.0:
            raise SolverError(f"fidelity {self.fidelity!r} outside [0, 1]")
        if math.isfinite(self.e_proj) and math.isfinite(self.e_exact):
            if self.e_proj < self.e_exact - 1e-12:
                raise SolverError(
                    f"variational bound violated: e_proj = {self.e_proj!r} < "
                    f"e_exact = {self.e_exact!r} at gamma = {self.gamma!r}, "
                    f"delta = {self.delta!r}"
                )

    def csv_row(self) -> str:
        parts = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "n_atoms":
                parts.append(str(v))
            elif f.name.startswith("lambda_"):
                parts.append(f"{v:.1f}")
            else:
                parts.append(f"{v:.16e}")
        return ",".join(parts)

    def json_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name != "n_atoms" and not math.isfinite(v):
                v = None
            out[f.name] = v
        return out


def compute_record(params: ModelParams, method: str = "both") -> SweepRecord:
    """Evaluate one parameter point with the requested solver(s)."""
    do_proj = method in ("both", "projected")
    do_exact = method in ("both", "exact")
    vals = dict.fromkeys((f.name for f in fields(SweepRecord)), _NAN)
    vals.update(gamma=params.coupling, delta=params.detuning, n_atoms=params.n_atoms)
    proj_state = None
    gs = None
    if do_proj:
        lam_p = select_lambda(params)
        obs_p = observables(params, lam_p)
        proj_state = build_state(params, lam_p)
        vals.update(
            lambda_proj=lam_p,
            e_proj=obs_p.energy_per_particle,
            n_mean_proj=obs_p.n_mean,
            n_var_proj=obs_p.n_var,
            jz_mean_proj=obs_p.jz_mean,
            jz_var_proj=obs_p.jz_var,
            xi_proj=obs_p.xi,
            se_proj=obs_p.entropy,
        )
    if do_exact:
        gs = ground_state(params)
        obs_e = observables_from_state(gs, params)
        vals.update(
            lambda_exact=gs.lam,
            e_exact=gs.energy_per_particle,
            n_mean_exact=obs_e.n_mean,
            n_var_exact=obs_e.n_var,
            jz_mean_exact=obs_e.jz_mean,
            jz_var_exact=obs_e.jz_var,
            xi_exact=obs_e.xi,
            se_exact=obs_e.entropy,
        )
    if do_proj and do_exact:
        vals["fidelity"] = fidelity(proj_state, gs)
    record = SweepRecord(**vals)
    record.validate()
    return record


def _grid_point(task: tuple[int, float, float, str]) -> SweepRecord:
    n_atoms, delta, gamma, method = task
    return compute_record(ModelParams(n_atoms, gamma, delta), method)


def _make_params(args) -> ModelParams:
    if args.omega_a is not None:
        return ModelParams.from_omega_a(args.n_atoms, args.gamma, args.omega_a)
    return ModelParams(args.n_atoms, args.gamma, args.delta)


def _delta_of(args) -> float:
    return 1.0 - args.omega_a if args.omega_a is not None else args.delta


def _open_output(args):
    if args.output is None or args.output == "-":
        return sys.stdout, False
    return open(args.output, "w", encoding="utf-8", newline=""), True


def _emit_records(records, args, single: bool = False) -> None:
    out, close = _open_output(args)
    try:
        if args.format == "json":
            payload = records[0].json_dict() if single else [r.json_dict() for r in records]
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            out.write(CSV_HEADER + "\n")
            for r in records:
                out.write(r.csv_row() + "\n")
    finally:
        if close:
            out.close()


def run_point(args) -> int:
    record = compute_record(_make_params(args), args.method)
    _emit_records([record], args, single=True)
    return 0


def _gamma_axis(args, parser) -> np.ndarray:
    if args.gamma_steps < 2:
        parser.error("--gamma-steps must be >= 2")
    if not args.gamma_min < args.gamma_max:
        parser.error("--gamma-min must be < --gamma-max")
    return np.linspace(args.gamma_min, args.gamma_max, args.gamma_steps)


def _delta_axis(args, parser) -> np.ndarray:
    if args.delta_steps < 2:
        parser.error("--delta-steps must be >= 2")
    if not args.delta_min < args.delta_max:
        parser.error("--delta-min must be < --delta-max")
    return np.linspace(args.delta_min, args.delta_max, args.delta_steps)


def run_sweep(args, parser) -> int:
    delta = _delta_of(args)
    records = []
    for gamma in _gamma_axis(args, parser):
        try:
            records.append(
                compute_record(ModelParams(args.n_atoms, float(gamma), delta), args.method)
            )
        except SolverError as exc:
            raise SolverError(f"sweep failed at gamma = {float(gamma)!r}: {exc}") from exc
    _emit_records(records, args)
    return 0


def run_grid(args, parser) -> int:
    method = "projected" if args.projected_only else args.method
    tasks = [
        (args.n_atoms, float(delta), float(gamma), method)
        for delta in _delta_axis(args, parser)
        for gamma in _gamma_axis(args, parser)
    ]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                chunk = max(1, len(tasks) // (args.jobs * 8))
                records = list(pool.map(_grid_point, tasks, chunksize=chunk))
        else:
            records = [_grid_point(t) for t in tasks]
    except SolverError as exc:
        raise SolverError(f"grid failed: {exc}") from exc
    _emit_records(records, args)
    return 0


def run_spectrum(args, parser) -> int:
    if args.k < 1:
        parser.error("--k must be >= 1")
    levels = spectrum(_make_params(args), args.k)
    out, close = _open_output(args)
    try:
        if args.format == "json":
            payload = [
                {"index": i, "energy": e, "lambda": lam}
                for i, (e, lam) in enumerate(levels)
            ]
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            out.write("index,energy,lambda\n")
            for i, (e, lam) in enumerate(levels):
                out.write(f"{i},{e:.16e},{lam:.1f}\n")
    finally:
        if close:
            out.close()
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-atoms", type=int, required=True,
                        help="number of two-level atoms N (>= 1)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", default=None, metavar="PATH",
                        help="output file (default: standard output)")


def _add_detuning(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta", type=float, default=None,
                       help="detuning Delta = 1 - omega_a")
    group.add_argument("--omega-a", type=float, default=None, dest="omega_a",
                       help="atomic frequency in units of the field frequency")


def _add_method(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=("projected", "exact", "both"),
                        default="both")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcground",
        description="Ground states of N two-level atoms coupled to one photon "
                    "mode: exact sector diagonalization vs. the projected "
                    "coherent-state approximation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate a single parameter point")
    _add_common(p_point)
    _add_detuning(p_point)
    p_point.add_argument("--gamma", type=float, required=True,
                         help="collective coupling strength")
    _add_method(p_point)

    p_sweep = sub.add_parser("sweep", help="sweep the coupling at fixed detuning")
    _add_common(p_sweep)
    _add_detuning(p_sweep)
    p_sweep.add_argument("--gamma-min", type=float, required=True)
    p_sweep.add_argument("--gamma-max", type=float, required=True)
    p_sweep.add_argument("--gamma-steps", type=int, required=True)
    _add_method(p_sweep)

    p_grid = sub.add_parser("grid", help="scan a coupling-detuning box")
    _add_common(p_grid)
    p_grid.add_argument("--gamma-min", type=float, required=True)
    p_grid.add_argument("--gamma-max", type=float, required=True)
    p_grid.add_argument("--gamma-steps", type=int, required=True)
    p_grid.add_argument("--delta-min", type=float, required=True)
    p_grid.add_argument("--delta-max", type=float, required=True)
    p_grid.add_argument("--delta-steps", type=int, required=True)
    _add_method(p_grid)
    p_grid.add_argument("--projected-only", action="store_true",
                        help="skip the exact diagonalization (faster)")
    p_grid.add_argument("--jobs", type=int, default=1,
                        help="worker processes; output order is unchanged")

    p_spec = sub.add_parser("spectrum", help="k lowest levels across sectors")
    _add_common(p_spec)
    _add_detuning(p_spec)
    p_spec.add_argument("--gamma", type=float, required=True)
    p_spec.add_argument("--k", type=int, required=True,
                        help="number of levels to report")

    return parser


def _validate_common(args, parser: argparse.ArgumentParser) -> None:
    if args.n_atoms < 1:
        parser.error("--n-atoms must be >= 1")
    for name in ("gamma", "gamma_min", "gamma_max", "delta", "delta_min",
                 "delta_max", "omega_a"):
        value = getattr(args, name, None)
        if value is not None and not math.isfinite(value):
            parser.error(f"--{name.replace('_', '-')} must be finite")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    if getattr(args, "projected_only", False) and getattr(args, "method", "both") == "exact":
        parser.error("--projected-only conflicts with --method exact")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_common(args, parser)
    try:
        if args.command == "point":
            return run_point(args)
        if args.command == "sweep":
            return run_sweep(args, parser)
        if args.command == "grid":
            return run_grid(args, parser)
        return run_spectrum(args, parser)
    except (SolverError, ValueError) as exc:
        print(f"tcground: solver failure: {exc}", file=sys.stderr)
        return 3


def console_entry() -> None:
    sys.exit(main())
