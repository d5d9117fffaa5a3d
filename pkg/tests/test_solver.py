import numpy as np
import pytest

from opweno.errors import StateError
from opweno.grid import BoundaryKind, build_grid_1d, cell_average_ic, fill_ghost
from opweno.kernels import reconstruct_left, reconstruct_right
from opweno.mappings import MopAcmk, WenoJs, make_scheme
from opweno.problems import exact_advection, get_problem
from opweno.solver import (AdvectionEquation1D, TimeStepping, advance_to,
                           advection_rhs_1d, compute_dt, lax_friedrichs,
                           ssp_rk3_step)


def test_lax_friedrichs_values():
    ident = lambda u: u
    assert lax_friedrichs(1.0, 1.0, ident, 1.0) == 1.0
    assert lax_friedrichs(1.0, -1.0, ident, 1.0) == 1.0
    assert lax_friedrichs(2.0, 0.0, lambda u: 0.5 * u * u, 2.0) == 3.0


def test_compute_dt_modes():
    grid = build_grid_1d(0, 1, 400)  # dx = 0.0025
    assert compute_dt(grid, 1.0, TimeStepping(cfl=0.1)) == pytest.approx(2.5e-4)
    grid = build_grid_1d(-1, 1, 160)  # dx = 0.0125
    dt = compute_dt(grid, 1.0, TimeStepping(dt_mode="accuracy-cfl"))
    assert dt == pytest.approx(0.0125 ** (5.0 / 3.0), rel=1e-14)
    from opweno.grid import build_grid_2d
    grid2 = build_grid_2d(0, 1, 0, 1, 800, 800)
    assert compute_dt(grid2, (2.0, 2.0), TimeStepping(cfl=0.5)) == \
        pytest.approx(1.5625e-4)


def test_ssp_rk3_identity_and_decay():
    assert ssp_rk3_step(4.2, lambda u: 0.0, 0.5) == 4.2
    u1 = ssp_rk3_step(1.0, lambda u: -u, 0.1)
    z = 0.1
    assert u1 == pytest.approx(1 - z + z * z / 2 - z ** 3 / 6, abs=1e-15)


def test_ssp_rk3_third_order():
    errs = []
    for dt in (0.05, 0.025, 0.0125):
        n = round(1.0 / dt)
        u = 1.0
        for _ in range(n):
            u = ssp_rk3_step(u, lambda v: -v, dt)
        errs.append(abs(u - np.exp(-1.0)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(orders - 3.0) < 0.05)


def _prepared_field(n, profile="sine"):
    grid = build_grid_1d(-1, 1, n)
    field = get_problem(profile).make_ic(grid)
    fill_ghost(field, BoundaryKind.PERIODIC)
    return grid, field


def test_rhs_constant_field_is_zero():
    grid = build_grid_1d(-1, 1, 32)
    field = cell_average_ic(grid, lambda x: np.full_like(x, 2.5))
    fill_ghost(field, BoundaryKind.PERIODIC)
    for sid in ("js", "m", "mop-acmk"):
        rhs = advection_rhs_1d(field, make_scheme(sid))
        assert np.abs(rhs).max() < 1e-14


def test_rhs_conserves_periodic_mass():
    grid, field = _prepared_field(64, "slp")
    for sid in ("js", "mip-acmk", "mop-acmk"):
        rhs = advection_rhs_1d(field, make_scheme(sid))
        assert abs(rhs.sum() * grid.dx) < 1e-12


def test_rhs_matches_per_interface_assembly():
    # independent assembly from the public reconstruction ops
    grid, field = _prepared_field(24, "sine")
    spec = MopAcmk()
    eps = 1e-6
    rhs = advection_rhs_1d(field, spec, eps=eps)
    u = field.values[0]
    ng, n, dx = grid.n_ghost, grid.n_cells, grid.dx
    flux = np.empty(n + 1)
    for i in range(n + 1):
        c = ng + i
        um = reconstruct_left(u[c - 3:c + 2], spec, eps)
        up = reconstruct_right(u[c - 2:c + 3], spec, eps)
        flux[i] = 0.5 * ((um + up) - (up - um))
    manual = -(flux[1:] - flux[:-1]) / dx
    assert np.abs(rhs[0] - manual).max() < 1e-13


def test_rhs_fifth_order_against_exact_flux_difference():
    errs = []
    for n in (160, 320):
        grid, field = _prepared_field(n)
        rhs = advection_rhs_1d(field, WenoJs())[0]
        edges = grid.interfaces()
        exact = -(np.sin(np.pi * edges[1:]) - np.sin(np.pi * edges[:-1])) / grid.dx
        errs.append(np.abs(rhs - exact).max())
    assert np.log2(errs[0] / errs[1]) >= 4.5


def test_advance_to_zero_time_is_identity():
    grid, field = _prepared_field(40)
    before = field.interior.copy()
    stats = advance_to(AdvectionEquation1D(), field, TimeStepping(t_end=0.0))
    assert stats.steps == 0
    assert np.array_equal(field.interior, before)


def test_advance_full_period_returns_profile():
    grid, field = _prepared_field(80)
    advance_to(AdvectionEquation1D(), field, TimeStepping(cfl=0.4, t_end=2.0),
               MopAcmk())
    exact = exact_advection("sine", 2.0, grid)
    assert np.abs(field.interior - exact.interior).max() < 1e-4


def test_advance_conserves_mass():
    grid, field = _prepared_field(100, "slp")
    m0 = field.interior.sum() * grid.dx
    advance_to(AdvectionEquation1D(), field, TimeStepping(cfl=0.4, t_end=1.0),
               MopAcmk())
    assert abs(field.interior.sum() * grid.dx - m0) < 1e-12


def test_advance_aborts_on_nonfinite():
    grid, field = _prepared_field(40)

    class BadEq(AdvectionEquation1D):
        def rhs(self, f, alpha, spec, eps, buffers):
            out, nfb = super().rhs(f, alpha, spec, eps, buffers)
            out[0, 3] = np.inf
            return out, nfb

    with pytest.raises(StateError):
        advance_to(BadEq(), field, TimeStepping(cfl=0.4, t_end=1.0))


def test_final_step_clips_to_t_end():
    grid, field = _prepared_field(40)
    stats = advance_to(AdvectionEquation1D(), field,
                       TimeStepping(cfl=0.3, t_end=0.0777))
    assert stats.t == 0.0777
    dt = compute_dt(grid, 1.0, TimeStepping(cfl=0.3))
    assert stats.steps == int(np.ceil(0.0777 / dt))


def test_euler_wave_speed_example():
    from opweno.euler2d import EulerEquation2D, prim_to_cons
    from opweno.grid import CellField2D, build_grid_2d

    grid = build_grid_2d(0, 1, 0, 1, 8, 8)
    f = CellField2D.zeros(grid, 4)
    f.interior[...] = prim_to_cons(1.0, 0.0, 0.0, 1.0)[:, None, None]
    ax, ay = EulerEquation2D().max_wave_speed(f)
    assert ax == pytest.approx(1.1832160, abs=1e-7)
    assert ay == pytest.approx(1.1832160, abs=1e-7)


def test_progress_log_lines(capsys):
    import io

    grid, field = _prepared_field(40)
    stream = io.StringIO()
    advance_to(AdvectionEquation1D(), field, TimeStepping(cfl=0.4, t_end=0.2),
               log_every=2, log_stream=stream)
    lines = stream.getvalue().strip().splitlines()
    assert lines and lines[0].startswith("step=0,t=0,")
    assert all("dt=" in ln and "alpha=" in ln for ln in lines)
