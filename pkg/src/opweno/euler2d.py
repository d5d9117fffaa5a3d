"""Two-dimensional Euler equations: eigensystems, conversions, and the
characteristic-wise finite-volume WENO right-hand side.

Conserved layout is U = (rho, rho*u, rho*v, E) on (component, y, x) arrays.
Fluxes are assembled dimension by dimension with one midpoint evaluation per
face: the six cells flanking a face are projected onto the characteristic
fields of the face's mean state, each field is WENO-reconstructed with both
biases, the states are projected back, and a componentwise global
Lax-Friedrichs flux closes the face.  The y sweep transposes the state and
swaps the momentum components, then reuses the x kernel, so the two
directions are exact mirrors of each other.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ConfigurationError, StateError
from .grid import BoundaryKind, CellField2D, Grid2D
from .mappings import interface_value

DEFAULT_GAMMA = 1.4


@dataclass(frozen=True)
class GasConstants:
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ConfigurationError(f"gamma={self.gamma} must exceed 1")


def prim_to_cons(rho, u, v, p, gamma=DEFAULT_GAMMA):
    rho = np.asarray(rho, dtype=float)
    e = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack(np.broadcast_arrays(rho, rho * u, rho * v, e))

def cons_to_prim(cons, gamma=DEFAULT_GAMMA):
    rho, mx, my, e = cons
    u = mx / rho
    v = my / rho
    p = (gamma - 1.0) * (e - 0.5 * rho * (u * u + v * v))
    return rho, u, v, p


def sound_speed(rho, p, gamma=DEFAULT_GAMMA):
    return np.sqrt(gamma * p / rho)


@dataclass(frozen=True)
class EulerEigenSystem:
    left: np.ndarray        # (4, 4), rows are left eigenvectors
    right: np.ndarray       # (4, 4), columns are right eigenvectors
    eigenvalues: np.ndarray  # ascending (un-c, un, un, un+c)
    direction: str           # "x" or "y"


def _mean_primitives(u_left, u_right, gamma, averaging):
    rl, ul, vl, pl = cons_to_prim(np.asarray(u_left, dtype=float), gamma)
    rr, ur, vr, pr = cons_to_prim(np.asarray(u_right, dtype=float), gamma)
    if min(rl, rr) <= 0 or min(pl, pr) <= 0:
        raise StateError("nonphysical state handed to the eigensystem")
    if averaging == "roe":
        sl, sr = np.sqrt(rl), np.sqrt(rr)
        w = 1.0 / (sl + sr)
        hl = gamma * pl / ((gamma - 1.0) * rl) + 0.5 * (ul * ul + vl * vl)
        hr = gamma * pr / ((gamma - 1.0) * rr) + 0.5 * (ur * ur + vr * vr)
        u = (sl * ul + sr * ur) * w
        v = (sl * vl + sr * vr) * w
        h = (sl * hl + sr * hr) * w
        c2 = (gamma - 1.0) * (h - 0.5 * (u * u + v * v))
        if c2 <= 0:
            raise StateError("nonphysical Roe-averaged state")
        return sl * sr, u, v, np.sqrt(c2), h
    if averaging != "arithmetic":
        raise ConfigurationError(f"unknown averaging {averaging!r}")
    r = 0.5 * (rl + rr)
    u = 0.5 * (ul + ur)
    v = 0.5 * (vl + vr)
    p = 0.5 * (pl + pr)
    if r <= 0 or p <= 0:
        raise StateError("nonphysical mean state")
    c = np.sqrt(gamma * p / r)
    h = c * c / (gamma - 1.0) + 0.5 * (u * u + v * v)
    return r, u, v, c, h


def euler_eigensystem(u_left, u_right, direction, gamma=DEFAULT_GAMMA,
                      averaging="arithmetic") -> EulerEigenSystem:
    """Characteristic decomposition at a face from two adjacent conserved states."""
    _, u, v, c, h = _mean_primitives(u_left, u_right, gamma, averaging)
    ek = 0.5 * (u * u + v * v)
    b1 = (gamma - 1.0) / (c * c)
    b2 = b1 * ek
    if direction == "x":
        un, ut = u, v
        right = np.array([
            [1.0,        1.0, 0.0, 1.0],
            [u - c,      u,   0.0, u + c],
            [v,          v,   1.0, v],
            [h - u * c,  ek,  v,   h + u * c],
        ])
        left = np.array([
            [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
            [1.0 - b2,            b1 * u,                     b1 * v,      -b1],
            [-v,                  0.0,                        1.0,          0.0],
            [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
        ])
    elif direction == "y":
        un, ut = v, u
        right = np.array([
            [1.0,        1.0, 0.0, 1.0],
            [u,          u,   1.0, u],
            [v - c,      v,   0.0, v + c],
            [h - v * c,  ek,  u,   h + v * c],
        ])
        left = np.array([
            [0.5 * (b2 + v / c), -0.5 * b1 * u, -0.5 * (b1 * v + 1.0 / c), 0.5 * b1],
            [1.0 - b2,            b1 * u,        b1 * v,                   -b1],
            [-u,                  1.0,           0.0,                       0.0],
            [0.5 * (b2 - v / c), -0.5 * b1 * u, -0.5 * (b1 * v - 1.0 / c), 0.5 * b1],
        ])
    else:
        raise ConfigurationError(f"direction must be 'x' or 'y', got {direction!r}")
    lam = np.array([un - c, un, un, un + c])
    return EulerEigenSystem(left, right, lam, direction)


@njit(cache=True)
def _xflux_nb(U, ny, nx, ng, gamma, alpha, eps, kind, params, roe, F):
    """Characteristic-wise x-direction face fluxes into F (4, ny, nx+1).

    Returns (fallback_count, error_code); error 1 flags a nonphysical cell,
    error 2 a nonphysical mean or reconstructed face state.
    """
    gm1 = gamma - 1.0
    nfb = 0
    w = np.empty((4, 6))
    for jy in range(ny):
        y = ng + jy
        for ix in range(nx + 1):
            il = ng + ix - 1
            # primitives of the two face-adjacent cells
            rl = U[0, y, il]
            ql = 1.0 / rl
            ul = U[1, y, il] * ql
            vl = U[2, y, il] * ql
            pl = gm1 * (U[3, y, il] - 0.5 * rl * (ul * ul + vl * vl))
            rr = U[0, y, il + 1]
            qr = 1.0 / rr
            ur = U[1, y, il + 1] * qr
            vr = U[2, y, il + 1] * qr
            pr = gm1 * (U[3, y, il + 1] - 0.5 * rr * (ur * ur + vr * vr))
            if rl <= 0.0 or pl <= 0.0 or rr <= 0.0 or pr <= 0.0:
                return nfb, 1
            if roe:
                sl = np.sqrt(rl)
                sr = np.sqrt(rr)
                wgt = 1.0 / (sl + sr)
                um = (sl * ul + sr * ur) * wgt
                vm = (sl * vl + sr * vr) * wgt
                hl = gamma * pl / (gm1 * rl) + 0.5 * (ul * ul + vl * vl)
                hr = gamma * pr / (gm1 * rr) + 0.5 * (ur * ur + vr * vr)
                hm = (sl * hl + sr * hr) * wgt
                c2 = gm1 * (hm - 0.5 * (um * um + vm * vm))
                if c2 <= 0.0:
                    return nfb, 2
                cm = np.sqrt(c2)
            else:
                rm = 0.5 * (rl + rr)
                um = 0.5 * (ul + ur)
                vm = 0.5 * (vl + vr)
                pm = 0.5 * (pl + pr)
                if rm <= 0.0 or pm <= 0.0:
                    return nfb, 2
                cm = np.sqrt(gamma * pm / rm)
                hm = cm * cm / gm1 + 0.5 * (um * um + vm * vm)
            ek = 0.5 * (um * um + vm * vm)
            b1 = gm1 / (cm * cm)
            b2 = b1 * ek
            ci = 1.0 / cm
            # project the six flanking cells onto the characteristic fields
            for mcell in range(6):
                xc = il - 2 + mcell
                r0 = U[0, y, xc]
                r1 = U[1, y, xc]
                r2 = U[2, y, xc]
                r3 = U[3, y, xc]
                w[0, mcell] = 0.5 * ((b2 + um * ci) * r0 - (b1 * um + ci) * r1
                                     - b1 * vm * r2 + b1 * r3)
                w[1, mcell] = (1.0 - b2) * r0 + b1 * um * r1 + b1 * vm * r2 - b1 * r3
                w[2, mcell] = -vm * r0 + r2
                w[3, mcell] = 0.5 * ((b2 - um * ci) * r0 - (b1 * um - ci) * r1
                                     - b1 * vm * r2 + b1 * r3)
            # biased reconstructions per characteristic field
            wm0, f0 = interface_value(w[0, 0], w[0, 1], w[0, 2], w[0, 3], w[0, 4], kind, params, eps)
            wm1, f1 = interface_value(w[1, 0], w[1, 1], w[1, 2], w[1, 3], w[1, 4], kind, params, eps)
            wm2, f2 = interface_value(w[2, 0], w[2, 1], w[2, 2], w[2, 3], w[2, 4], kind, params, eps)
            wm3, f3 = interface_value(w[3, 0], w[3, 1], w[3, 2], w[3, 3], w[3, 4], kind, params, eps)
            wp0, g0 = interface_value(w[0, 5], w[0, 4], w[0, 3], w[0, 2], w[0, 1], kind, params, eps)
            wp1, g1 = interface_value(w[1, 5], w[1, 4], w[1, 3], w[1, 2], w[1, 1], kind, params, eps)
            wp2, g2 = interface_value(w[2, 5], w[2, 4], w[2, 3], w[2, 2], w[2, 1], kind, params, eps)
            wp3, g3 = interface_value(w[3, 5], w[3, 4], w[3, 3], w[3, 2], w[3, 1], kind, params, eps)
            nfb += f0 + f1 + f2 + f3 + g0 + g1 + g2 + g3
            # back to conserved face states
            rhom = wm0 + wm1 + wm3
            mxm = wm0 * (um - cm) + wm1 * um + wm3 * (um + cm)
            mym = (wm0 + wm1 + wm3) * vm + wm2
            em = wm0 * (hm - um * cm) + wm1 * ek + wm2 * vm + wm3 * (hm + um * cm)
            rhop = wp0 + wp1 + wp3
            mxp = wp0 * (um - cm) + wp1 * um + wp3 * (um + cm)
            myp = (wp0 + wp1 + wp3) * vm + wp2
            ep = wp0 * (hm - um * cm) + wp1 * ek + wp2 * vm + wp3 * (hm + um * cm)
            if rhom <= 0.0 or rhop <= 0.0:
                return nfb, 2
            uum = mxm / rhom
            vvm = mym / rhom
            ppm = gm1 * (em - 0.5 * rhom * (uum * uum + vvm * vvm))
            uup = mxp / rhop
            vvp = myp / rhop
            ppp = gm1 * (ep - 0.5 * rhop * (uup * uup + vvp * vvp))
            if ppm <= 0.0 or ppp <= 0.0:
                return nfb, 2
            # componentwise global Lax-Friedrichs
            F[0, jy, ix] = 0.5 * ((mxm + mxp) - alpha * (rhop - rhom))
            F[1, jy, ix] = 0.5 * ((mxm * uum + ppm + mxp * uup + ppp) - alpha * (mxp - mxm))
            F[2, jy, ix] = 0.5 * ((mxm * vvm + mxp * vvp) - alpha * (myp - mym))
            F[3, jy, ix] = 0.5 * ((uum * (em + ppm) + uup * (ep + ppp)) - alpha * (ep - em))
    return nfb, 0


def _swapped_transpose(values, out):
    """(rho, mx, my, E) on (y, x) -> (rho, my, mx, E) on (x, y)."""
    out[0] = values[0].T
    out[1] = values[2].T
    out[2] = values[1].T
    out[3] = values[3].T
    return out


class EulerEquation2D:
    """2D Euler system closed by the ideal-gas law."""

    ncomp = 4

    def __init__(self, gamma=DEFAULT_GAMMA, boundary=BoundaryKind.TRANSMISSIVE,
                 averaging="arithmetic"):
        if averaging not in ("arithmetic", "roe"):
            raise ConfigurationError(f"unknown averaging {averaging!r}")
        GasConstants(gamma)
        self.gamma = float(gamma)
        self.boundary = boundary
        self.averaging = averaging

    def max_wave_speed(self, field: CellField2D):
        rho, u, v, p = cons_to_prim(field.interior, self.gamma)
        if np.any(rho <= 0) or np.any(p <= 0):
            raise StateError("nonpositive density or pressure")
        c = np.sqrt(self.gamma * p / rho)
        return float(np.max(np.abs(u) + c)), float(np.max(np.abs(v) + c))

    def make_buffers(self, grid: Grid2D):
        g = grid.n_ghost
        return {
            "F": np.empty((4, grid.ny, grid.nx + 1)),
            "G": np.empty((4, grid.nx, grid.ny + 1)),
            "UT": np.empty((4, grid.nx + 2 * g, grid.ny + 2 * g)),
            "rhs": np.empty((4, grid.ny, grid.nx)),
        }

    def rhs(self, field: CellField2D, alphas, spec, eps, buffers):
        from .mappings import packed_params

        grid = field.grid
        g = grid.n_ghost
        ax, ay = alphas
        params = packed_params(spec)
        roe = self.averaging == "roe"
        F = buffers["F"]
        nfb1, err = _xflux_nb(field.values, grid.ny, grid.nx, g, self.gamma,
                              float(ax), eps, spec.kind_id, params, roe, F)
        if err:
            raise StateError("nonphysical state in x-direction fluxes")
        out = buffers["rhs"]
        np.subtract(F[:, :, :-1], F[:, :, 1:], out=out)
        out /= grid.dx
        # mirrored y sweep on the transposed, momentum-swapped state
        UT = _swapped_transpose(field.values, buffers["UT"])
        G = buffers["G"]
        nfb2, err = _xflux_nb(UT, grid.nx, grid.ny, g, self.gamma,
                              float(ay), eps, spec.kind_id, params, roe, G)
        if err:
            raise StateError("nonphysical state in y-direction fluxes")
        gdiff = (G[:, :, :-1] - G[:, :, 1:]) / grid.dy   # (4, nx, ny)
        out[0] += gdiff[0].T
        out[1] += gdiff[2].T
        out[2] += gdiff[1].T
        out[3] += gdiff[3].T
        return out, int(nfb1 + nfb2)


def euler_rhs_2d(field: CellField2D, spec, alphas, eps=1e-6,
                 gamma=DEFAULT_GAMMA, averaging="arithmetic"):
    """Standalone RHS evaluation (ghosts must be filled); returns a fresh array."""
    eq = EulerEquation2D(gamma=gamma, averaging=averaging)
    buffers = eq.make_buffers(field.grid)
    rhs, _ = eq.rhs(field, alphas, spec, eps, buffers)
    return rhs.copy()
