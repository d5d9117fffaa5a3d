"""Fifth-order WENO-JS building blocks.

Everything here is a pure scalar function of a five-cell window
(u0, u1, u2, u3, u4) = (ubar_{j-2}, ..., ubar_{j+2}), compiled with numba so
the same code serves both the tests and the per-interface solver loops.
The left-biased interface value approximates u at x_{j+1/2}; the right-biased
one is the left reconstruction of the reversed window.
"""

import numpy as np
from numba import njit

# ideal weights of the left-biased fifth-order combination
D0, D1, D2 = 0.1, 0.6, 0.3
DEFAULT_EPS = 1e-6

_C13 = 13.0 / 12.0


@njit(cache=True, inline="always")
def smoothness_indicators(u0, u1, u2, u3, u4):
    """Jiang-Shu smoothness indicators (beta0, beta1, beta2) of the window."""
    b0 = _C13 * (u0 - 2.0 * u1 + u2) ** 2 + 0.25 * (u0 - 4.0 * u1 + 3.0 * u2) ** 2
    b1 = _C13 * (u1 - 2.0 * u2 + u3) ** 2 + 0.25 * (u1 - u3) ** 2
    b2 = _C13 * (u2 - 2.0 * u3 + u4) ** 2 + 0.25 * (3.0 * u2 - 4.0 * u3 + u4) ** 2
    return b0, b1, b2


@njit(cache=True, inline="always")
def substencil_values(u0, u1, u2, u3, u4):
    """Third-order substencil approximations (u^0, u^1, u^2) at x_{j+1/2}."""
    q0 = (2.0 * u0 - 7.0 * u1 + 11.0 * u2) / 6.0
    q1 = (-u1 + 5.0 * u2 + 2.0 * u3) / 6.0
    q2 = (2.0 * u2 + 5.0 * u3 - u4) / 6.0
    return q0, q1, q2


@njit(cache=True, inline="always")
def js_weights(b0, b1, b2, eps):
    """Normalized nonlinear weights d_s / (eps + beta_s)^2."""
    a0 = D0 / ((eps + b0) * (eps + b0))
    a1 = D1 / ((eps + b1) * (eps + b1))
    a2 = D2 / ((eps + b2) * (eps + b2))
    s = a0 + a1 + a2
    return a0 / s, a1 / s, a2 / s


@njit(cache=True, inline="always")
def convex_combine(w0, w1, w2, q0, q1, q2):
    return w0 * q0 + w1 * q1 + w2 * q2


def reconstruct_left(window, spec=None, eps=DEFAULT_EPS):
    """Left-biased interface value at x_{j+1/2} for a five-cell window.

    ``spec`` selects the weight strategy: None / a JS spec leaves the
    nonlinear weights untouched, any other mapping spec from
    :mod:`opweno.mappings` remaps them before the convex combination.
    """
    from .mappings import WenoJs, apply_mapping

    u0, u1, u2, u3, u4 = (float(v) for v in window)
    b0, b1, b2 = smoothness_indicators(u0, u1, u2, u3, u4)
    w = js_weights(b0, b1, b2, eps)
    if spec is not None and not isinstance(spec, WenoJs):
        w, _, _ = apply_mapping(w, spec)
    q0, q1, q2 = substencil_values(u0, u1, u2, u3, u4)
    return convex_combine(w[0], w[1], w[2], q0, q1, q2)


def reconstruct_right(window, spec=None, eps=DEFAULT_EPS):
    """Right-biased value at x_{j-1/2}: the left reconstruction of the reversed window."""
    return reconstruct_left(tuple(window)[::-1], spec, eps)
