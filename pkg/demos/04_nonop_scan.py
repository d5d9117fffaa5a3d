"""Scan a run for rank-inverting mapping events (non-OP points).

Every Runge-Kutta stage is scanned on both reconstruction biases; an event
records the weights before mapping, the raw mapped values, and the first
substencil pair whose ranking flipped.  The rank-inverting families produce
events at hundreds of cells of this run; the identity and the
order-preserving staircase produce exactly none.

Writes demos/output/nonop_<scheme>.csv.
"""

import os

from opweno import build_grid_1d, TimeStepping, advance_to, make_scheme
from opweno.diagnostics import NonOpScanHook, write_nonop_csv
from opweno.problems import get_problem
from opweno.solver import AdvectionEquation1D

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "output")

os.makedirs(OUT, exist_ok=True)
for sid in ("pm6", "im", "mip-acmk", "js", "mop-acmk"):
    spec = make_scheme(sid)
    grid = build_grid_1d(-1, 1, 400)
    field = get_problem("slp").make_ic(grid)
    scan = NonOpScanHook(spec, eps=1e-40)
    advance_to(AdvectionEquation1D(), field, TimeStepping(cfl=0.1, t_end=2.0),
               spec, eps=1e-40, hooks=(scan,))
    write_nonop_csv(os.path.join(OUT, f"nonop_{sid}.csv"), scan.snapshot_records)
    print(f"{sid:9s} events={scan.total_count:8d} "
          f"cells-at-output={len(scan.snapshot_cells):4d}")
    if scan.snapshot_records:
        r = scan.snapshot_records[0]
        print(f"          e.g. x={r.x:+.4f} [{r.bias}] w=({r.w[0]:.5f}, "
              f"{r.w[1]:.5f}, {r.w[2]:.5f}) -> g=({r.g[0]:.5f}, {r.g[1]:.5f}, "
              f"{r.g[2]:.5f}) pair={r.pair}")
