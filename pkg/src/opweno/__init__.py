"""Fifth-order mapped WENO finite-volume schemes with order-preserving
weight mappings, plus the diagnostics to study how mappings act on the
nonlinear weights in live computations."""

from .errors import ConfigurationError, DataError, StateError
from .grid import (BoundaryKind, CellField1D, CellField2D, Grid1D, Grid2D,
                   build_grid_1d, build_grid_2d, cell_average_ic, fill_ghost)
from .kernels import (DEFAULT_EPS, convex_combine, js_weights,
                      reconstruct_left, reconstruct_right,
                      smoothness_indicators, substencil_values)
from .mappings import (IDEAL_WEIGHTS, SORTED_IDEAL_WEIGHTS, MipAcmk, MopAcmk,
                       WenoIm, WenoJs, WenoM, WenoPm, apply_mapping,
                       classify_op_set, g, is_nonop_instance, make_scheme,
                       mapping_curve)
from .solver import (AdvectionEquation1D, TimeStepping, advance_to,
                     advection_rhs_1d, compute_dt, lax_friedrichs,
                     ssp_rk3_step)
from .euler2d import (EulerEquation2D, GasConstants, cons_to_prim,
                      euler_eigensystem, euler_rhs_2d, prim_to_cons)
from .diagnostics import (MappingTraceHook, NonOpScanHook, convergence_orders,
                          discontinuity_probe, envelope_overshoot, error_norms,
                          increased_error_pct, overshoot_metric)
from .problems import (EXPERIMENTS, PROBLEMS, ShockVortexSpec, exact_advection,
                       get_problem, ic_bicwp, ic_riemann2d_config4,
                       ic_shock_vortex, ic_slp, ic_smooth, registry_lookup,
                       shock_vortex_right_state)
from .runconfig import RunConfig, format_config, parse_config
from .runner import emit_plotdata, run_single, run_sweep

__version__ = "0.1.0"
