from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opweno.kernels import (convex_combine, js_weights, reconstruct_left,
                            reconstruct_right, smoothness_indicators,
                            substencil_values)
from opweno.mappings import MopAcmk, WenoJs

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
windows = st.tuples(finite, finite, finite, finite, finite)


def test_smoothness_constant_window():
    assert smoothness_indicators(1.0, 1.0, 1.0, 1.0, 1.0) == (0.0, 0.0, 0.0)


def test_smoothness_linear_window():
    # hand evaluation on linear data: every indicator reduces to the slope^2
    assert smoothness_indicators(0.0, 1.0, 2.0, 3.0, 4.0) == (1.0, 1.0, 1.0)


def test_smoothness_single_jump():
    b0, b1, b2 = smoothness_indicators(0.0, 0.0, 0.0, 0.0, 1.0)
    assert b0 == 0.0 and b1 == 0.0
    assert b2 == pytest.approx(13.0 / 12.0 + 0.25, abs=0)


@settings(deadline=None)
@given(windows)
def test_smoothness_nonnegative(w):
    assert all(b >= 0.0 for b in smoothness_indicators(*w))


@settings(deadline=None)
@given(st.floats(min_value=-100, max_value=100, allow_nan=False))
def test_substencil_reproduces_constants(c):
    q = substencil_values(c, c, c, c, c)
    assert all(v == pytest.approx(c, rel=1e-15, abs=1e-15) for v in q)


def test_substencil_linear_window():
    assert substencil_values(0.0, 1.0, 2.0, 3.0, 4.0) == (2.5, 2.5, 2.5)


def _quartic_averages(dx, x0):
    """Exact rational cell averages of x^4 on the five-cell window whose
    central cell has its right edge at the interface x0."""
    cells = []
    for j in range(-3, 2):
        a = x0 + j * dx
        b = a + dx
        cells.append((b ** 5 - a ** 5) / (5 * dx))
    return cells


def test_quartic_exactness_rational_oracle():
    # ideal-weight combination must reproduce quartics exactly: rational check
    dx, x0 = Fraction(1), Fraction(1, 2)
    ubar = _quartic_averages(dx, x0)
    q0 = (2 * ubar[0] - 7 * ubar[1] + 11 * ubar[2]) / 6
    q1 = (-ubar[1] + 5 * ubar[2] + 2 * ubar[3]) / 6
    q2 = (2 * ubar[2] + 5 * ubar[3] - ubar[4]) / 6
    combo = Fraction(1, 10) * q0 + Fraction(6, 10) * q1 + Fraction(3, 10) * q2
    assert combo == x0 ** 4


def test_quartic_exactness_float():
    dx, x0 = Fraction(1, 10), Fraction(37, 100)
    ubar = [float(v) for v in _quartic_averages(dx, x0)]
    q = substencil_values(*ubar)
    value = convex_combine(0.1, 0.6, 0.3, *q)
    assert value == pytest.approx(float(x0) ** 4, abs=1e-12)


def test_js_weights_reduce_to_ideal():
    for b in (0.0, 1.0):
        assert js_weights(b, b, b, 1e-6) == pytest.approx((0.1, 0.6, 0.3), abs=1e-15)


def test_js_weights_discard_rough_substencil():
    w0, w1, w2 = js_weights(1.0, 0.0, 0.0, 1e-6)
    assert w0 == pytest.approx(1.111e-13, rel=1e-3)
    assert w1 == pytest.approx(2.0 / 3.0, rel=1e-6)
    assert w2 == pytest.approx(1.0 / 3.0, rel=1e-6)


@settings(deadline=None)
@given(st.tuples(st.floats(0, 1e8), st.floats(0, 1e8), st.floats(0, 1e8)))
def test_js_weights_normalized(betas):
    w = js_weights(*betas, 1e-6)
    assert sum(w) == pytest.approx(1.0, abs=1e-14)
    assert all(0.0 <= v <= 1.0 for v in w)


def test_convex_combine_probe_rows():
    # rank-inversion study rows: prescribed weights against (1, 1, -1)
    assert convex_combine(0.37291, 0.53663, 0.09046, 1.0, 1.0, -1.0) == \
        pytest.approx(0.81908, abs=1e-12)
    assert convex_combine(0.54547, 0.39684, 0.05769, 1.0, 1.0, -1.0) == \
        pytest.approx(0.88462, abs=1e-12)
    assert convex_combine(0.1, 0.6, 0.3, 7.5, 7.5, 7.5) == pytest.approx(7.5)


def test_reconstruct_constant_any_strategy():
    for spec in (None, WenoJs(), MopAcmk()):
        assert reconstruct_left((3.7,) * 5, spec) == pytest.approx(3.7, rel=1e-15)


def test_reconstruct_linear_window():
    assert reconstruct_left((0.0, 1.0, 2.0, 3.0, 4.0), WenoJs()) == \
        pytest.approx(2.5, abs=1e-12)


def _interface_errors(n):
    dx = 2.0 / n
    edges = -1.0 + dx * np.arange(n + 1)
    ubar = (np.cos(np.pi * edges[:-1]) - np.cos(np.pi * edges[1:])) / (np.pi * dx)
    ext = np.concatenate([ubar[-3:], ubar, ubar[:3]])
    errs = []
    for i in range(n + 1):
        w = ext[i : i + 5]  # cells i-3..i+1 around interface i
        errs.append(abs(reconstruct_left(w) - np.sin(np.pi * edges[i])))
    return max(errs)


def test_fifth_order_interface_convergence():
    errs = [_interface_errors(n) for n in (40, 80, 160, 320)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert (orders >= 4.5).all()


def test_mirror_symmetry_bitwise(rng):
    for _ in range(1000):
        w = tuple(rng.normal(size=5))
        assert reconstruct_right(w) == reconstruct_left(w[::-1])


def test_symmetric_window_agreement(rng):
    a, b, c = rng.normal(size=3)
    w = (a, b, c, b, a)
    assert reconstruct_left(w) == reconstruct_right(w)


def test_eno_style_envelope(rng):
    # sanity envelope, not a theorem: monotone data stays near the data range
    for _ in range(200):
        w = np.sort(rng.normal(size=5))
        lo, hi = w[0], w[4]
        slack = 0.5 * (hi - lo)
        v = reconstruct_left(tuple(w))
        assert lo - slack <= v <= hi + slack
