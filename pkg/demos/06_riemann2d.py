"""Four-quadrant gas-dynamics interaction on the unit square.

Characteristic-wise reconstruction with a global Lax-Friedrichs flux and
third-order SSP time stepping; the initial quadrant states are symmetric
under (x, y) swap and the computed density stays symmetric to round-off.
At this desk resolution the run takes about a minute; N = 800 matches the
published contour plots.

Writes demos/output/riemann2d_<scheme>/solution.csv and a y = 0.5 density
slice per scheme.
"""

import os

import numpy as np

from opweno.runconfig import parse_config
from opweno.runner import emit_plotdata, run_single

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "output")
N = 100

for sid in ("mop-acmk", "js"):
    cfg = parse_config(f"problem=riemann2d-c4 scheme={sid} N={N} cfl=0.5 "
                       "t_end=0.25 eps=1e-40")
    outdir = os.path.join(OUT, f"riemann2d_{sid}")
    summary, field, _ = run_single(cfg, outdir=outdir)
    rho = field.interior[0]
    print(f"{sid:9s} steps={summary['steps']:4d} "
          f"rho in [{rho.min():.4f}, {rho.max():.4f}] "
          f"diag-sym={np.abs(rho - rho.T).max():.2e}")
    slice_path = os.path.join(OUT, f"riemann2d_{sid}_slice_y05.csv")
    emit_plotdata("slice-2d", slice_path, run_dir=outdir, y=0.5)
    print(f"          slice -> {slice_path}")
