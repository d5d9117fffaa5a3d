"""Uniform 1D/2D grids with cell-averaged fields and ghost layers.

Cell averages live in arrays of shape ``(ncomp, n + 2*n_ghost)`` in 1D and
``(ncomp, ny + 2*n_ghost, nx + 2*n_ghost)`` in 2D (component, y, x; x is the
fastest axis).  Ghost layers are filled by :func:`fill_ghost` with either
periodic wrapping or zeroth-order (transmissive) extrapolation.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, DataError

STENCIL_GHOST = 3  # fifth-order biased stencils reach 3 cells past an interface


class BoundaryKind(Enum):
    PERIODIC = "periodic"
    TRANSMISSIVE = "transmissive"


@dataclass(frozen=True)
class Grid1D:
    x_left: float
    x_right: float
    n_cells: int
    n_ghost: int = STENCIL_GHOST

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def length(self) -> float:
        return self.x_right - self.x_left

    def centers(self) -> np.ndarray:
        j = np.arange(self.n_cells)
        return self.x_left + (j + 0.5) * self.dx

    def interfaces(self) -> np.ndarray:
        return self.x_left + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class Grid2D:
    x_left: float
    x_right: float
    y_left: float
    y_right: float
    nx: int
    ny: int
    n_ghost: int = STENCIL_GHOST

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.nx

    @property
    def dy(self) -> float:
        return (self.y_right - self.y_left) / self.ny

    def x_centers(self) -> np.ndarray:
        return self.x_left + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return self.y_left + (np.arange(self.ny) + 0.5) * self.dy


def build_grid_1d(x_left, x_right, n_cells, n_ghost=STENCIL_GHOST) -> Grid1D:
    if not x_right > x_left:
        raise ConfigurationError(f"empty extent [{x_left}, {x_right}]")
    if n_cells < 5:
        raise ConfigurationError(f"n_cells={n_cells} below the 5-point stencil width")
    if n_ghost < STENCIL_GHOST:
        raise ConfigurationError(f"n_ghost={n_ghost} < {STENCIL_GHOST}")
    return Grid1D(float(x_left), float(x_right), int(n_cells), int(n_ghost))


def build_grid_2d(x_left, x_right, y_left, y_right, nx, ny, n_ghost=STENCIL_GHOST) -> Grid2D:
    if not (x_right > x_left and y_right > y_left):
        raise ConfigurationError("empty 2D extent")
    if nx < 5 or ny < 5:
        raise ConfigurationError("nx/ny below the 5-point stencil width")
    if n_ghost < STENCIL_GHOST:
        raise ConfigurationError(f"n_ghost={n_ghost} < {STENCIL_GHOST}")
    return Grid2D(float(x_left), float(x_right), float(y_left), float(y_right),
                  int(nx), int(ny), int(n_ghost))


@dataclass
class CellField1D:
    grid: Grid1D
    values: np.ndarray  # (ncomp, n + 2*n_ghost), ghosts included

    @classmethod
    def zeros(cls, grid: Grid1D, ncomp: int = 1) -> "CellField1D":
        return cls(grid, np.zeros((ncomp, grid.n_cells + 2 * grid.n_ghost)))

    @property
    def ncomp(self) -> int:
        return self.values.shape[0]

    @property
    def interior(self) -> np.ndarray:
        g = self.grid.n_ghost
        return self.values[:, g:g + self.grid.n_cells]

    def copy(self) -> "CellField1D":
        return CellField1D(self.grid, self.values.copy())


@dataclass
class CellField2D:
    grid: Grid2D
    values: np.ndarray  # (ncomp, ny + 2g, nx + 2g)

    @classmethod
    def zeros(cls, grid: Grid2D, ncomp: int = 4) -> "CellField2D":
        g = grid.n_ghost
        return cls(grid, np.zeros((ncomp, grid.ny + 2 * g, grid.nx + 2 * g)))

    @property
    def ncomp(self) -> int:
        return self.values.shape[0]

    @property
    def interior(self) -> np.ndarray:
        g = self.grid.n_ghost
        return self.values[:, g:g + self.grid.ny, g:g + self.grid.nx]

    def copy(self) -> "CellField2D":
        return CellField2D(self.grid, self.values.copy())


def _fill_axis(values, axis, n, g, kind):
    # index helper building slices along one axis
    def sl(a, b):
        idx = [slice(None)] * values.ndim
        idx[axis] = slice(a, b)
        return tuple(idx)

    if kind is BoundaryKind.PERIODIC:
        values[sl(0, g)] = values[sl(n, n + g)]
        values[sl(g + n, g + n + g)] = values[sl(g, 2 * g)]
    elif kind is BoundaryKind.TRANSMISSIVE:
        values[sl(0, g)] = values[sl(g, g + 1)]
        values[sl(g + n, g + n + g)] = values[sl(g + n - 1, g + n)]
    else:
        raise ConfigurationError(f"unknown boundary kind {kind!r}")


def fill_ghost(fld, kind):
    """Fill ghost layers in place and return the field.

    ``kind`` is one :class:`BoundaryKind` applied to every edge, or a pair
    (x_kind, y_kind) for 2D fields.  Non-finite interior values are a data
    error: the solver must never hand a corrupted field to the stencils.
    """
    if not np.all(np.isfinite(fld.interior)):
        raise DataError("non-finite interior values before ghost fill")
    if isinstance(fld, CellField1D):
        _fill_axis(fld.values, 1, fld.grid.n_cells, fld.grid.n_ghost, kind)
        return fld
    kx, ky = (kind, kind) if isinstance(kind, BoundaryKind) else kind
    g = fld.grid.n_ghost
    # x first over all rows, then y over full (already x-filled) rows so the
    # corner ghosts come out diagonally wrapped / nearest-corner extrapolated
    _fill_axis(fld.values, 2, fld.grid.nx, g, kx)
    _fill_axis(fld.values, 1, fld.grid.ny, g, ky)
    return fld


def _gauss_nodes(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def cell_average_ic(grid: Grid1D, f, quadrature_order: int = 5,
                    breakpoints=()) -> CellField1D:
    """Cell averages of a pointwise profile via Gauss-Legendre quadrature.

    ``breakpoints`` lists x locations where ``f`` is non-smooth; every cell
    containing one is integrated piecewise so jumps aligned with cell edges
    come out exact and interior kinks do not poison the quadrature order.
    """
    nodes, weights = _gauss_nodes(quadrature_order)
    xl = grid.x_left + grid.dx * np.arange(grid.n_cells)
    xr = xl + grid.dx
    mid = 0.5 * (xl + xr)
    half = 0.5 * grid.dx
    pts = mid[None, :] + half * nodes[:, None]
    vals = np.asarray(f(pts), dtype=float)
    avg = 0.5 * np.einsum("q,qj->j", weights, vals)

    bps = np.asarray([b for b in np.atleast_1d(np.asarray(breakpoints, dtype=float))
                      if grid.x_left < b < grid.x_right])
    if bps.size:
        # redo the cells that contain a breakpoint strictly inside; points
        # within round-off of a cell edge count as edge-aligned (no split),
        # which keeps piecewise-constant plateaus exact
        tol = 1e-12 * grid.dx
        cells = np.unique(np.clip(((bps - grid.x_left) / grid.dx).astype(int),
                                  0, grid.n_cells - 1))
        for j in cells:
            interior = bps[(bps > xl[j] + tol) & (bps < xr[j] - tol)]
            if not interior.size:
                continue
            edges = np.concatenate(([xl[j]], np.sort(interior), [xr[j]]))
            acc = 0.0
            for a, b in zip(edges[:-1], edges[1:]):
                if b <= a:
                    continue
                h = 0.5 * (b - a)
                p = 0.5 * (a + b) + h * nodes
                acc += h * float(np.dot(weights, np.asarray(f(p), dtype=float)))
            avg[j] = acc / grid.dx

    if not np.all(np.isfinite(avg)):
        raise DataError("initial profile produced non-finite cell averages")
    out = CellField1D.zeros(grid, 1)
    out.interior[0, :] = avg
    return out


def cell_average_ic_2d(grid: Grid2D, f, ncomp: int, quadrature_order: int = 5) -> CellField2D:
    """Tensor-product Gauss-Legendre cell averages of f(x, y) -> (ncomp, ...)."""
    nodes, weights = _gauss_nodes(quadrature_order)
    xc = grid.x_centers()
    yc = grid.y_centers()
    hx, hy = 0.5 * grid.dx, 0.5 * grid.dy
    acc = np.zeros((ncomp, grid.ny, grid.nx))
    for wi, xi in zip(weights, nodes):
        for wj, yj in zip(weights, nodes):
            px = xc[None, :] + hx * xi
            py = yc[:, None] + hy * yj
            acc += 0.25 * wi * wj * np.asarray(f(px, py), dtype=float)
    if not np.all(np.isfinite(acc)):
        raise DataError("initial profile produced non-finite cell averages")
    out = CellField2D.zeros(grid, ncomp)
    out.interior[...] = acc
    return out
