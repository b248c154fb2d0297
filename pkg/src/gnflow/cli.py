"""Command-line interface: ``gnflow run|compare|converge <config>``.

Exit codes: 0 success, 1 comparison above tolerance, 2 configuration error,
3 loss of monotonicity, 4 solver failure (ill-posed solve, residual failure,
rejected step).  ``summary.json`` is written on every path that gets past
argument parsing.
"""
import argparse
import csv
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from gnflow import __version__
from gnflow.config import initial_data, load_config
from gnflow.diagnostics import (
    CSV_COLUMNS,
    convergence_rate,
    linf_relative_error,
    solitary_wave,
)
from gnflow.elliptic import solve_Ah
from gnflow.errors import ConfigError, GNFlowError, MonotonicityLoss
from gnflow.eulerian import integrate_eulerian
from gnflow.flowmap import reconstruct_eulerian
from gnflow.grid import PeriodicGrid
from gnflow.stepping import auto_dt
from gnflow.integrate import integrate
from gnflow.kernels import BACKEND
from gnflow.state import EulerianState, FlowMapState

EXIT_OK = 0
EXIT_COMPARE_FAILED = 1
EXIT_CONFIG = 2
EXIT_MONOTONICITY = 3
EXIT_SOLVER = 4

FIELDS_COLUMNS = ("t", "x", "h", "u")
COMPARE_COLUMNS = ("t", "sup_dh", "sup_du", "l2_dh", "l2_du")
CONVERGE_COLUMNS = ("resolution", "error", "observed_order")

TERMINATION_EXIT = {
    "completed": EXIT_OK,
    "monotonicity_loss": EXIT_MONOTONICITY,
    "step_rejected": EXIT_SOLVER,
}


def _finite_or_none(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    if isinstance(obj, np.generic):
        return _finite_or_none(obj.item())
    return obj


def _atomic_write(path, writer):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, columns, rows):
    def w(fh):
        out = csv.writer(fh)
        out.writerow(columns)
        for row in rows:
            out.writerow(["" if isinstance(v, float) and not math.isfinite(v) else repr(float(v))
                          if isinstance(v, (float, np.floating)) else v for v in row])

    _atomic_write(path, w)


def write_json(path, payload):
    _atomic_write(path, lambda fh: json.dump(_finite_or_none(payload), fh, indent=2, allow_nan=False))


class Run:
    """Bookkeeping for one command: output directory, timing and summary."""

    def __init__(self, command, cfg, outdir):
        self.command = command
        self.cfg = cfg
        self.outdir = outdir
        self.t0 = time.perf_counter()
        self.summary = {
            "command": command,
            "termination": "error",
            "final_time": 0.0,
            "wall_seconds": 0.0,
            "config": cfg.echo() if cfg is not None else None,
            "diagnostics_final": None,
            "error_metrics": {},
        }

    def path(self, name):
        return os.path.join(self.outdir, name)

    def wants(self, fmt):
        return self.cfg is None or fmt in self.cfg.formats

    def finish(self, code, message=""):
        self.summary["wall_seconds"] = time.perf_counter() - self.t0
        self.summary["exit_code"] = code
        if message:
            self.summary["message"] = message
        write_json(self.path("summary.json"), self.summary)
        return code


def _diag_dict(rec):
    return {c: getattr(rec, c) for c in CSV_COLUMNS} | {
        "sigma": rec.sigma,
        "label_mass": rec.label_mass,
        "label_energy": rec.label_energy,
    }


def _solitary_metrics(cfg, grid, eul, t):
    exact = solitary_wave(cfg.a, grid, t=t, x0=cfg.x0)
    return {
        "h_linf_relative_error": linf_relative_error(eul.h, exact.h),
        "h_linf_error": float(np.max(np.abs(eul.h - exact.h))),
        "u_linf_error": float(np.max(np.abs(eul.u - exact.u))),
    }


def cmd_run(cfg, run):
    grid = cfg.grid
    h0, u0 = initial_data(cfg, grid)
    traj = integrate(grid, FlowMapState.initial(u0), h0, cfg.integrator())

    field_rows = []
    final_eul = None
    for t, st in zip(traj.times, traj.states):
        final_eul = reconstruct_eulerian(grid, st, h0)
        field_rows.extend(zip([t] * grid.n, grid.x, final_eul.h, final_eul.u))
    if run.wants("csv"):
        write_csv(run.path("fields.csv"), FIELDS_COLUMNS, field_rows)
        write_csv(run.path("diagnostics.csv"), CSV_COLUMNS, [r.row() for r in traj.diagnostics])

    first, last = traj.diagnostics[0], traj.diagnostics[-1]
    metrics = {
        "mass_initial": first.mass,
        "mass_final": last.mass,
        "label_mass_drift": abs(last.label_mass - first.label_mass),
        "energy_relative_drift": (last.energy - first.energy) / first.energy if first.energy else 0.0,
        "label_energy_relative_drift": (
            (last.label_energy - first.label_energy) / first.label_energy if first.label_energy else 0.0
        ),
        "min_phix": min(r.min_phix for r in traj.diagnostics),
        "dt": traj.dt,
        "steps": traj.steps,
    }
    if cfg.scenario == "solitary_wave" and not cfg.negate_velocity:
        metrics |= _solitary_metrics(cfg, grid, final_eul, traj.times[-1])
    run.summary.update(
        termination=traj.termination,
        final_time=traj.times[-1],
        diagnostics_final=_diag_dict(last),
        error_metrics=metrics,
        kernel_backend=BACKEND,
    )
    return run.finish(TERMINATION_EXIT[traj.termination], traj.message)


def compare_solvers(cfg, grid=None):
    """Lagrangian (+ reconstruction) vs Eulerian oracle on shared output times.

    Returns ``(rows, termination, message)`` with rows of ``COMPARE_COLUMNS``.
    """
    grid = grid or cfg.grid
    h0, u0 = initial_data(cfg, grid)
    dt = cfg.dt if cfg.dt is not None else auto_dt(grid, u0, h0, cfg.cfl_safety)
    icfg = cfg.integrator(dt=dt)
    lag = integrate(grid, FlowMapState.initial(u0), h0, icfg, record=False)
    eul = integrate_eulerian(grid, EulerianState(h0, u0), icfg, dealias=cfg.dealias)
    rows = []
    for t, ls, es in zip(lag.times, lag.states, eul.states):
        rec = reconstruct_eulerian(grid, ls, h0)
        dh, du = rec.h - es.h, rec.u - es.u
        rows.append((t, float(np.max(np.abs(dh))), float(np.max(np.abs(du))),
                     math.sqrt(grid.quadrature(dh**2)), math.sqrt(grid.quadrature(du**2))))
    return rows, lag.termination, lag.message


def cmd_compare(cfg, run):
    rows, termination, message = compare_solvers(cfg)
    if run.wants("csv"):
        write_csv(run.path("compare.csv"), COMPARE_COLUMNS, rows)
    max_dh = max(r[1] for r in rows)
    max_du = max(r[2] for r in rows)
    passed = termination == "completed" and max(max_dh, max_du) <= cfg.tolerance
    run.summary.update(
        termination=termination,
        final_time=rows[-1][0],
        error_metrics={"max_sup_dh": max_dh, "max_sup_du": max_du,
                       "tolerance": cfg.tolerance, "passed": passed},
    )
    code = TERMINATION_EXIT[termination]
    if code == EXIT_OK and not passed:
        code = EXIT_COMPARE_FAILED
    return run.finish(code, message)


def _time_ladder(cfg):
    """RK4 ladder at ``dt = base_dt / level``, measured against ``dt_min / 4``."""
    grid = cfg.grid
    h0, u0 = initial_data(cfg, grid)
    levels = cfg.levels or (1, 2)
    dts = [cfg.base_dt / lev for lev in levels]
    ref_dt = min(dts) / 4

    def final(dt):
        tr = integrate(grid, FlowMapState.initial(u0), h0,
                       cfg.integrator(dt=dt, stride=cfg.max_steps), record=False)
        if tr.termination != "completed":
            raise MonotonicityLoss(f"ladder run at dt={dt} ended with {tr.termination}")
        return tr.states[-1]

    ref = final(ref_dt)
    errs = []
    for dt in dts:
        s = final(dt)
        errs.append(max(np.max(np.abs(s.psi - ref.psi)), np.max(np.abs(s.v - ref.v))))
    return [1.0 / dt for dt in dts], errs


def _space_ladder(cfg):
    if cfg.scenario != "solitary_wave":
        raise ConfigError("converge.kind = space needs scenario.name = solitary_wave")
    res, errs = [], []
    for n in cfg.levels:
        grid = PeriodicGrid(cfg.length, n)
        h0, u0 = initial_data(cfg, grid)
        dt = cfg.dt if cfg.dt is not None else cfg.base_dt
        tr = integrate(grid, FlowMapState.initial(u0), h0,
                       cfg.integrator(dt=dt, stride=cfg.max_steps), record=False)
        if tr.termination != "completed":
            raise MonotonicityLoss(f"ladder run at n={n} ended with {tr.termination}")
        eul = reconstruct_eulerian(grid, tr.states[-1], h0)
        exact = solitary_wave(cfg.a, grid, t=tr.times[-1], x0=cfg.x0)
        res.append(n)
        errs.append(float(np.max(np.abs(eul.h - exact.h))))
    return res, errs


def manufactured_elliptic_error(n, length=80.0):
    """Sup error of ``solve_Ah`` against a known solution on an ``n``-point grid."""
    grid = PeriodicGrid(length, n)
    c = length / 2
    ustar = np.exp(-((grid.x - c) ** 2))
    h = 1.0 + 0.3 * np.exp(-((grid.x - c) ** 2) / 4.0)
    # exact continuum A_h u* so the error is the discretization error
    ux = -2.0 * (grid.x - c) * ustar
    uxx = (4.0 * (grid.x - c) ** 2 - 2.0) * ustar
    hx = 0.3 * (-(grid.x - c) / 2.0) * np.exp(-((grid.x - c) ** 2) / 4.0)
    f = 3.0 * h * ustar - (3.0 * h**2 * hx * ux + h**3 * uxx)
    return float(np.max(np.abs(solve_Ah(grid, h, f) - ustar)))


def _elliptic_ladder(cfg):
    return list(cfg.levels), [manufactured_elliptic_error(n, cfg.length) for n in cfg.levels]


def cmd_converge(cfg, run):
    levels = cfg.levels
    if len(levels) < 2 and not (cfg.converge_kind == "time" and not levels):
        raise ConfigError("converge.levels needs at least two resolutions")
    if any(lev <= 0 for lev in levels) or len(set(levels)) != len(levels):
        raise ConfigError("converge.levels must be distinct positive integers")
    if cfg.converge_kind != "time" and any(lev < 16 or lev % 2 for lev in levels):
        raise ConfigError("converge.levels must be even grid sizes >= 16")
    ladder = {"time": _time_ladder, "space": _space_ladder, "elliptic": _elliptic_ladder}
    res, errs = ladder[cfg.converge_kind](cfg)
    rows = []
    for i, (r, e) in enumerate(zip(res, errs)):
        order = "" if i == 0 else convergence_rate(errs[i - 1:i + 1], res[i - 1:i + 1])
        rows.append((r, e, order))
    if run.wants("csv"):
        write_csv(run.path("converge.csv"), CONVERGE_COLUMNS, rows)
    run.summary.update(
        termination="completed",
        final_time=cfg.T,
        error_metrics={"kind": cfg.converge_kind, "resolutions": list(res), "errors": errs,
                       "observed_order": convergence_rate(errs, res)},
    )
    return run.finish(EXIT_OK)


COMMANDS = {"run": cmd_run, "compare": cmd_compare, "converge": cmd_converge}


def build_parser():
    p = argparse.ArgumentParser(prog="gnflow", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gnflow {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("config", help="scenario config file (INI format)")
        sp.add_argument("--output-dir", help="override [output] directory")
        sp.add_argument("--seed", type=int, help="override [scenario] seed")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = None
    outdir = args.output_dir or "gnflow-out"
    try:
        cfg = load_config(args.config)
        overrides = {}
        if args.output_dir:
            overrides["directory"] = args.output_dir
        if args.seed is not None:
            overrides["seed"] = args.seed
        cfg = cfg.with_overrides(**overrides)
        outdir = cfg.directory
    except ConfigError as exc:
        print(f"gnflow: config error: {exc}", file=sys.stderr)
        return Run(args.command, cfg, outdir).finish(EXIT_CONFIG, str(exc))

    run = Run(args.command, cfg, outdir)
    try:
        return COMMANDS[args.command](cfg, run)
    except ConfigError as exc:
        print(f"gnflow: config error: {exc}", file=sys.stderr)
        return run.finish(EXIT_CONFIG, str(exc))
    except MonotonicityLoss as exc:
        run.summary["termination"] = "monotonicity_loss"
        return run.finish(EXIT_MONOTONICITY, str(exc))
    except GNFlowError as exc:
        run.summary["termination"] = "solver_failure"
        return run.finish(EXIT_SOLVER, f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
