"""Execute single runs and table-generating sweeps; emit plot-ready CSV data."""

import os
from dataclasses import replace

import numpy as np

from . import diagnostics as diag
from .errors import ConfigurationError
from .euler2d import EulerEquation2D, cons_to_prim
from .grid import build_grid_1d, build_grid_2d
from .mappings import make_scheme, mapping_curve
from .problems import exact_advection, get_problem
from .runconfig import RunConfig
from .solver import AdvectionEquation1D, TimeStepping, advance_to


def _build(problem, n):
    if problem.dimension == 1:
        grid = build_grid_1d(problem.x_left, problem.x_right, n)
        return grid, problem.make_ic(grid), AdvectionEquation1D(problem.boundary)
    grid = build_grid_2d(problem.x_left, problem.x_right,
                         problem.y_left, problem.y_right, n, n)
    return grid, problem.make_ic(grid), EulerEquation2D(boundary=problem.boundary)


def run_single(cfg: RunConfig, outdir=None, scheme=None, n=None):
    """Run one (scheme, N) configuration; returns (summary dict, final field, hooks)."""
    problem = get_problem(cfg.problem)
    if n is None:
        if len(cfg.resolutions) != 1:
            raise ConfigurationError(
                "run_single needs exactly one N; use run_sweep for lists")
        n = cfg.resolutions[0]
    spec = cfg.scheme if scheme is None else scheme
    grid, field, eq = _build(problem, n)
    ts = TimeStepping(cfl=cfg.cfl, t_end=cfg.t_end, dt_mode=cfg.dt_mode)

    hooks = []
    scan = trace = None
    if cfg.nonop_scan:
        scan = diag.NonOpScanHook(spec, eps=cfg.eps)
        hooks.append(scan)
    if cfg.mapping_trace:
        trace = diag.MappingTraceHook(spec, eps=cfg.eps)
        hooks.append(trace)

    stats = advance_to(eq, field, ts, spec, eps=cfg.eps, hooks=hooks,
                       log_every=cfg.log_every)

    summary = {
        "problem": cfg.problem,
        "scheme": spec.scheme_id,
        "N": int(n),
        "t_end": cfg.t_end,
        "eps": cfg.eps,
        "steps": stats.steps,
        "wall_seconds": stats.wall_seconds,
        "mapping_fallbacks": stats.fallback_count,
    }
    if problem.dimension == 1 and problem.has_exact:
        exact = exact_advection(problem, cfg.t_end, grid)
        l1, l2, linf = diag.error_norms(field, exact)
        summary.update(L1=l1, L2=l2, Linf=linf)
    if cfg.overshoot and problem.analytic_range is not None:
        over, under = diag.overshoot_metric(field, *problem.analytic_range)
        summary.update(overshoot=over, undershoot=under)
    if scan is not None:
        summary["nonop_count"] = scan.total_count
        summary["nonop_cells_final"] = len(scan.snapshot_cells)
    if trace is not None:
        summary["trace_records"] = len(trace.records)

    if outdir:
        os.makedirs(outdir, exist_ok=True)
        if problem.dimension == 1:
            diag.write_solution_csv_1d(os.path.join(outdir, "solution.csv"), field)
        else:
            diag.write_solution_csv_2d(os.path.join(outdir, "solution.csv"),
                                       field, eq.gamma)
        if scan is not None:
            diag.write_nonop_csv(os.path.join(outdir, "nonop.csv"),
                                 scan.records + scan.snapshot_records)
        if trace is not None:
            diag.write_trace_csv(os.path.join(outdir, "trace.csv"), trace.records)
        diag.write_summary_json(os.path.join(outdir, "summary.json"), summary)
    return summary, field, hooks


def run_sweep(cfg: RunConfig, outdir=None):
    """All (scheme, N) combinations with per-scheme convergence orders.

    Returns the error-table rows; with ``reference_scheme`` set, three
    increased-error percentage columns against that scheme are appended.
    """
    problem = get_problem(cfg.problem)
    if problem.dimension != 1 or not problem.has_exact:
        raise ConfigurationError("sweeps need a 1D problem with an exact solution")
    schemes = cfg.sweep_schemes()
    results = {}
    for sid, spec in schemes:
        for n in cfg.resolutions:
            summary, _, _ = run_single(cfg, scheme=spec, n=n)
            results[(sid, n)] = summary

    rows = []
    ref = cfg.reference_scheme
    for sid, _ in schemes:
        errs = {k: [results[(sid, n)][k] for n in cfg.resolutions]
                for k in ("L1", "L2", "Linf")}
        orders = {}
        for k in ("L1", "L2", "Linf"):
            if len(cfg.resolutions) >= 2 and all(
                    2 * a == b for a, b in zip(cfg.resolutions[:-1], cfg.resolutions[1:])):
                orders[k] = [None] + diag.convergence_orders(errs[k])
            else:
                orders[k] = [None] * len(cfg.resolutions)
        for i, n in enumerate(cfg.resolutions):
            row = [sid, n, errs["L1"][i], errs["L2"][i], errs["Linf"][i],
                   orders["L1"][i], orders["L2"][i], orders["Linf"][i]]
            if ref:
                for k in ("L1", "L2", "Linf"):
                    row.append(diag.increased_error_pct(
                        results[(sid, n)][k], results[(ref, n)][k])
                        if (ref, n) in results else None)
            rows.append(row)

    if outdir:
        os.makedirs(outdir, exist_ok=True)
        diag.write_errors_csv(os.path.join(outdir, "errors.csv"), rows,
                              reference_scheme=ref or None)
    return rows


def emit_plotdata(kind, out_path, run_dir=None, scheme=None, scheme_params=None,
                  samples=1001, y=0.5):
    """Produce one plot-ready CSV; see the CLI help for the kinds."""
    if kind == "mapping-curve":
        if scheme is None:
            raise ConfigurationError("mapping-curve needs a scheme")
        spec = make_scheme(scheme, **(scheme_params or {}))
        omega, g0, g1, g2 = mapping_curve(spec, samples)
        diag._write_rows(out_path, ["omega", "g0", "g1", "g2"],
                         [(diag.fmt(o), diag.fmt(a), diag.fmt(b), diag.fmt(c))
                          for o, a, b, c in zip(omega, g0, g1, g2)])
        return out_path

    if run_dir is None:
        raise ConfigurationError(f"plotdata kind {kind!r} needs a run directory")
    sol = os.path.join(run_dir, "solution.csv")
    if kind == "solution":
        x, u = diag.read_solution_csv_1d(_require(sol))
        diag._write_rows(out_path, ["x", "u"],
                         [(diag.fmt(a), diag.fmt(b)) for a, b in zip(x, u)])
    elif kind == "trace-scatter":
        records = diag.read_trace_csv(_require(os.path.join(run_dir, "trace.csv")))
        diag.write_trace_csv(out_path, records)
    elif kind == "nonop-overlay":
        x, u = diag.read_solution_csv_1d(_require(sol))
        records = diag.read_nonop_csv(_require(os.path.join(run_dir, "nonop.csv")))
        marked = sorted({r.x for r in records})
        rows = []
        for xm in marked:
            j = int(np.argmin(np.abs(x - xm)))
            rows.append((diag.fmt(x[j]), diag.fmt(u[j])))
        diag._write_rows(out_path, ["x", "u"], rows)
    elif kind == "slice-2d":
        data = diag.read_solution_csv_2d(_require(sol))
        ys = np.unique(data[:, 1])
        below = ys[ys <= y]
        y_row = below.max() if below.size else ys.min()
        sel = data[data[:, 1] == y_row]
        sel = sel[np.argsort(sel[:, 0])]
        diag._write_rows(out_path, ["x", "rho"],
                         [(diag.fmt(r[0]), diag.fmt(r[2])) for r in sel])
    else:
        raise ConfigurationError(f"unknown plotdata kind {kind!r}")
    return out_path


def _require(path):
    if not os.path.exists(path):
        raise ConfigurationError(f"missing input file {path}")
    return path
