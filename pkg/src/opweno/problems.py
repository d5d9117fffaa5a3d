"""Registry of benchmark problems: initial profiles, exact solutions, and
the canonical run parameters of each experiment (full-size and desk-scale).

All 1D problems are linear advection u_t + u_x = 0 on [-1, 1] with periodic
boundaries, so the exact solution is the translated initial profile with
period 2.  The 2D problems are Euler gas dynamics on the unit square with
transmissive boundaries.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .grid import (BoundaryKind, CellField1D, CellField2D, Grid1D, Grid2D,
                   build_grid_2d, cell_average_ic, cell_average_ic_2d)
from .euler2d import DEFAULT_GAMMA, prim_to_cons

# --------------------------------------------------------------------------
# pointwise 1D profiles

def profile_sine(x):
    return np.sin(np.pi * x)


def profile_sine_critical(x):
    # two first-order critical points per period, third derivative nonzero
    return np.sin(np.pi * x - np.sin(np.pi * x) / np.pi)


def profile_sine9(x):
    return np.sin(np.pi * x) ** 9


_SLP_Z = -0.7
_SLP_DELTA = 0.005
_SLP_BETA = math.log(2.0) / (36.0 * _SLP_DELTA ** 2)
_SLP_A = 0.5
_SLP_ALPHA = 10.0


def _gauss(x, center):
    return np.exp(-_SLP_BETA * (x - center) ** 2)


def _ellipse(x, center):
    return np.sqrt(np.maximum(1.0 - _SLP_ALPHA ** 2 * (x - center) ** 2, 0.0))


def profile_slp(x):
    """Gaussian / square wave / sharp triangle / semi-ellipse combination."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = (x >= -0.8) & (x <= -0.6)
    out = np.where(m, (_gauss(x, _SLP_Z - _SLP_DELTA) + 4.0 * _gauss(x, _SLP_Z)
                       + _gauss(x, _SLP_Z + _SLP_DELTA)) / 6.0, out)
    out = np.where((x >= -0.4) & (x <= -0.2), 1.0, out)
    m = (x >= 0.0) & (x <= 0.2)
    out = np.where(m, 1.0 - np.abs(10.0 * (x - 0.1)), out)
    m = (x >= 0.4) & (x <= 0.6)
    out = np.where(m, (_ellipse(x, _SLP_A - _SLP_DELTA) + 4.0 * _ellipse(x, _SLP_A)
                       + _ellipse(x, _SLP_A + _SLP_DELTA)) / 6.0, out)
    return out


# branch edges plus the square-root kinks of the shifted semi-ellipses
SLP_BREAKPOINTS = (-0.8, -0.6, -0.4, -0.2, 0.0, 0.1, 0.2,
                   0.4, _SLP_A + _SLP_DELTA - 0.1, _SLP_A - _SLP_DELTA + 0.1, 0.6)


def profile_bicwp(x):
    """Three constant plateaus {0, 0.5, 1} with jumps at multiples of 0.2."""
    x = np.asarray(x, dtype=float)
    half = ((x > -0.6) & (x <= -0.4)) | ((x > 0.2) & (x <= 0.4)) | ((x > 0.6) & (x <= 0.8))
    one = ((x > -0.8) & (x <= -0.6)) | ((x > -0.4) & (x <= -0.2)) | ((x > 0.4) & (x <= 0.6))
    return np.where(one, 1.0, np.where(half, 0.5, 0.0))


BICWP_BREAKPOINTS = (-0.8, -0.6, -0.4, -0.2, 0.2, 0.4, 0.6, 0.8)


# --------------------------------------------------------------------------
# 2D initial states

RIEMANN2D_C4_STATES = {
    # quadrant: (rho, u, v, p); quadrants split at x = 0.5, y = 0.5
    "++": (1.1, 0.0, 0.0, 1.1),
    "-+": (0.5065, 0.8939, 0.0, 0.35),
    "--": (1.1, 0.8939, 0.8939, 1.1),
    "+-": (0.5065, 0.0, 0.8939, 0.35),
}


def ic_riemann2d_config4(grid: Grid2D, gamma=DEFAULT_GAMMA) -> CellField2D:
    """Four constant states by quadrant; exact averages when 0.5 sits on edges."""
    xc = grid.x_centers()[None, :]
    yc = grid.y_centers()[:, None]
    right = xc >= 0.5
    top = yc >= 0.5
    prim = np.zeros((4, grid.ny, grid.nx))
    for key, mask in (("++", right & top), ("-+", ~right & top),
                      ("--", ~right & ~top), ("+-", right & ~top)):
        state = RIEMANN2D_C4_STATES[key]
        for c in range(4):
            prim[c] = np.where(mask, state[c], prim[c])
    out = CellField2D.zeros(grid, 4)
    out.interior[...] = prim_to_cons(prim[0], prim[1], prim[2], prim[3], gamma)
    return out


@dataclass(frozen=True)
class ShockVortexSpec:
    epsilon: float = 0.3
    r_c: float = 0.05
    alpha: float = 0.204
    x_c: float = 0.25
    y_c: float = 0.5
    p_right: float = 1.3


def shock_vortex_left_state(gamma=DEFAULT_GAMMA):
    return (1.0, math.sqrt(gamma), 0.0, 1.0)


def shock_vortex_right_state(spec: ShockVortexSpec = ShockVortexSpec(),
                             gamma=DEFAULT_GAMMA):
    """Post-shock state from the prescribed right pressure via the jump relations."""
    rho_l, u_l, _, _ = shock_vortex_left_state(gamma)
    pr = spec.p_right
    rho = rho_l * (gamma - 1.0 + (gamma + 1.0) * pr) / (gamma + 1.0 + (gamma - 1.0) * pr)
    u = u_l * (1.0 - pr) / math.sqrt(gamma - 1.0 + pr * (gamma + 1.0))
    return (rho, u, 0.0, pr)


def shock_vortex_pointwise(x, y, spec: ShockVortexSpec = ShockVortexSpec(),
                           gamma=DEFAULT_GAMMA):
    """Pointwise conserved state: perturbed left state for x < 0.5, shocked right state beyond."""
    rho_l, u_l, v_l, p_l = shock_vortex_left_state(gamma)
    r2 = ((x - spec.x_c) ** 2 + (y - spec.y_c) ** 2) / spec.r_c ** 2
    gau = np.exp(spec.alpha * (1.0 - r2))
    dT = -(gamma - 1.0) * spec.epsilon ** 2 * gau * gau / (4.0 * spec.alpha * gamma)
    drho = rho_l ** 2 / ((gamma - 1.0) * p_l) * dT
    du = spec.epsilon * (y - spec.y_c) / spec.r_c * gau
    dv = -spec.epsilon * (x - spec.x_c) / spec.r_c * gau
    dp = gamma * rho_l ** 2 / ((gamma - 1.0) * rho_l) * dT
    rho_r, u_r, v_r, p_r = shock_vortex_right_state(spec, gamma)
    left = x < 0.5
    rho = np.where(left, rho_l + drho, rho_r)
    u = np.where(left, u_l + du, u_r)
    v = np.where(left, v_l + dv, v_r)
    p = np.where(left, p_l + dp, p_r)
    return prim_to_cons(rho, u, v, p, gamma)


def ic_shock_vortex(grid: Grid2D, spec: ShockVortexSpec = ShockVortexSpec(),
                    gamma=DEFAULT_GAMMA) -> CellField2D:
    return cell_average_ic_2d(
        grid, lambda x, y: shock_vortex_pointwise(x, y, spec, gamma), 4,
        quadrature_order=5)


# --------------------------------------------------------------------------
# problem registry

@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dimension: int
    equation: str                   # "advection" | "euler2d"
    boundary: BoundaryKind
    has_exact: bool
    profile: object = None          # pointwise f(x) for 1D problems
    breakpoints: tuple = ()
    quad_order: int = 5
    analytic_range: tuple = None    # (lower, upper) bounds of the exact solution
    x_left: float = -1.0
    x_right: float = 1.0
    y_left: float = 0.0
    y_right: float = 1.0
    ic2d: object = None             # grid -> CellField2D

    @property
    def length(self):
        return self.x_right - self.x_left

    def make_ic(self, grid):
        if self.dimension == 1:
            return cell_average_ic(grid, self.profile, self.quad_order,
                                   self.breakpoints)
        return self.ic2d(grid)


PROBLEMS = {
    "sine": ProblemSpec("sine", 1, "advection", BoundaryKind.PERIODIC, True,
                        profile=profile_sine),
    "sine-critical": ProblemSpec("sine-critical", 1, "advection",
                                 BoundaryKind.PERIODIC, True,
                                 profile=profile_sine_critical),
    "sine9": ProblemSpec("sine9", 1, "advection", BoundaryKind.PERIODIC, True,
                         profile=profile_sine9),
    "slp": ProblemSpec("slp", 1, "advection", BoundaryKind.PERIODIC, True,
                       profile=profile_slp, breakpoints=SLP_BREAKPOINTS,
                       quad_order=20, analytic_range=(0.0, 1.0)),
    "bicwp": ProblemSpec("bicwp", 1, "advection", BoundaryKind.PERIODIC, True,
                         profile=profile_bicwp, breakpoints=BICWP_BREAKPOINTS,
                         quad_order=5, analytic_range=(0.0, 1.0)),
    "riemann2d-c4": ProblemSpec("riemann2d-c4", 2, "euler2d",
                                BoundaryKind.TRANSMISSIVE, False,
                                x_left=0.0, x_right=1.0, y_left=0.0, y_right=1.0,
                                ic2d=ic_riemann2d_config4),
    "shock-vortex": ProblemSpec("shock-vortex", 2, "euler2d",
                                BoundaryKind.TRANSMISSIVE, False,
                                x_left=0.0, x_right=1.0, y_left=0.0, y_right=1.0,
                                ic2d=ic_shock_vortex),
}


def get_problem(name) -> ProblemSpec:
    try:
        return PROBLEMS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown problem {name!r}; known: {', '.join(sorted(PROBLEMS))}") from None


def ic_smooth(name, grid: Grid1D) -> CellField1D:
    if name not in ("sine", "sine-critical", "sine9"):
        raise ConfigurationError(f"{name!r} is not one of the smooth profiles")
    return get_problem(name).make_ic(grid)


def ic_slp(grid: Grid1D) -> CellField1D:
    return get_problem("slp").make_ic(grid)


def ic_bicwp(grid: Grid1D) -> CellField1D:
    return get_problem("bicwp").make_ic(grid)


def exact_advection(problem, t, grid: Grid1D) -> CellField1D:
    """Cell averages of the initial profile translated by t (period = domain)."""
    spec = get_problem(problem) if isinstance(problem, str) else problem
    if spec.equation != "advection":
        raise ConfigurationError(f"{spec.name!r} is not an advection problem")
    length = spec.length
    shift = math.fmod(t, length)
    if shift == 0.0:
        return cell_average_ic(grid, spec.profile, spec.quad_order, spec.breakpoints)
    xl = spec.x_left

    def shifted(x):
        return spec.profile(np.mod(np.asarray(x) - shift - xl, length) + xl)

    bps = sorted({(b + shift - xl) % length + xl for b in spec.breakpoints}
                 | {(shift % length) + xl})
    return cell_average_ic(grid, shifted, spec.quad_order, tuple(bps))


# --------------------------------------------------------------------------
# canonical experiment parameters

@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    problem: str
    resolutions: tuple
    t_end: float
    cfl: float = 0.1
    dt_mode: str = "fixed-cfl"
    eps: float = 1e-40              # matches the published tables; see README
    notes: str = ""


def _exp(name, problem, resolutions, t_end, **kw):
    return ExperimentPreset(name, problem, tuple(resolutions), t_end, **kw)


EXPERIMENTS = {e.name: e for e in (
    _exp("accuracy-sine", "sine", (10, 20, 40, 80, 160, 320), 2.0,
         dt_mode="accuracy-cfl", notes="smooth convergence study, no critical points"),
    _exp("accuracy-sine-critical", "sine-critical", (10, 20, 40, 80, 160, 320), 2.0,
         dt_mode="accuracy-cfl", notes="convergence with first-order critical points"),
    # the published long-time tables label their grid by the count (the
    # "1/200" and "1/800" captions correspond to 200 and 800 cells here)
    _exp("sine9-longtime", "sine9", (200,), 1000.0, dt_mode="accuracy-cfl",
         notes="high-order critical points, long-time error growth"),
    _exp("sine9-longtime-desk", "sine9", (200,), 50.0, dt_mode="accuracy-cfl"),
    _exp("sine9-ordering-desk", "sine9", (200,), 200.0, cfl=0.1,
         notes="long-time scheme-quality ordering at desk scale"),
    _exp("slp-short", "slp", (200, 400, 800), 2.0),
    _exp("slp-short-desk", "slp", (200,), 2.0),
    _exp("slp-nonop", "slp", (400,), 2.0,
         notes="mapping-event scan configuration"),
    _exp("slp-long", "slp", (800,), 2000.0),
    _exp("slp-long-desk", "slp", (200,), 2000.0),
    _exp("bicwp-long", "bicwp", (800,), 2000.0),
    _exp("bicwp-long-desk", "bicwp", (1600,), 200.0),
    _exp("riemann2d-c4", "riemann2d-c4", (800,), 0.25, cfl=0.5),
    _exp("riemann2d-c4-desk", "riemann2d-c4", (200,), 0.25, cfl=0.5),
    _exp("shock-vortex", "shock-vortex", (800,), 0.35, cfl=0.5),
    _exp("shock-vortex-desk", "shock-vortex", (200,), 0.35, cfl=0.5),
)}


def registry_lookup(name) -> ExperimentPreset:
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown experiment {name!r}; known: {', '.join(sorted(EXPERIMENTS))}") from None
