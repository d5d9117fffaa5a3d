"""Weight-mapping families and the order-preserving (OP) classifier.

A mapping g_s(omega) post-processes the three JS weights toward the ideal
weights; the mapped raw values alpha_s = g_s(omega_s) are renormalized to a
new weight triple.  Families implemented:

* ``WenoJs``   -- identity (no mapping)
* ``WenoM``    -- rational fixed-point mapping with g(d_s)=d_s, g'(d_s)=g''(d_s)=0
* ``WenoPm``   -- piecewise polynomial with additionally g'(0)=g'(1)=0 (k=6 classic)
* ``WenoIm``   -- two-parameter (k, A) generalization containing WenoM = IM(2, 1)
* ``MipAcmk``  -- per-substencil piecewise-constant ramp mapping (thresholds CFS_s)
* ``MopAcmk``  -- single substencil-independent staircase over the sorted ideal
  weights; the one family here whose mapping set is order-preserving

A mapping *set* is order-preserving when it can never strictly invert the
ranking of two weights (and maps equal weights to equal values).  The
classifier samples that predicate; :func:`is_nonop_instance` checks one
concrete (weights, mapped-raw-values) pair of triples.
"""

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ConfigurationError
from .kernels import D0, D1, D2, js_weights, smoothness_indicators, substencil_values

IDEAL_WEIGHTS = (D0, D1, D2)
SORTED_IDEAL_WEIGHTS = (0.1, 0.3, 0.6)  # ascending sort of the ideal weights
# plateau switch points: midpoints between consecutive sorted ideal weights
_MID01 = 0.5 * (SORTED_IDEAL_WEIGHTS[0] + SORTED_IDEAL_WEIGHTS[1])  # 0.2
_MID12 = 0.5 * (SORTED_IDEAL_WEIGHTS[1] + SORTED_IDEAL_WEIGHTS[2])  # 0.45

KIND_JS, KIND_M, KIND_PM, KIND_IM, KIND_MIP, KIND_MOP = range(6)
NONOP_TOL = 1e-12
_NPARAMS = 6


@dataclass(frozen=True)
class WenoJs:
    kind_id: int = field(default=KIND_JS, init=False)
    scheme_id = "js"

    def config_args(self):
        return {}


@dataclass(frozen=True)
class WenoM:
    kind_id: int = field(default=KIND_M, init=False)
    scheme_id = "m"

    def config_args(self):
        return {}


@dataclass(frozen=True)
class WenoPm:
    k: int = 6
    kind_id: int = field(default=KIND_PM, init=False)
    scheme_id = "pm"

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ConfigurationError(f"pm mapping needs an even k >= 2, got k={self.k}")

    def config_args(self):
        return {"k": self.k}


@dataclass(frozen=True)
class WenoIm:
    k: int = 2
    a: float = 0.1
    kind_id: int = field(default=KIND_IM, init=False)
    scheme_id = "im"

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ConfigurationError(f"im mapping needs a positive even k, got k={self.k}")
        if not self.a > 0:
            raise ConfigurationError(f"im mapping needs A > 0, got A={self.a}")

    def config_args(self):
        return {"k": self.k, "A": self.a}


def _default_mip_cfs():
    return tuple(d / 10.0 for d in IDEAL_WEIGHTS)


@dataclass(frozen=True)
class MipAcmk:
    cfs: tuple = (0.01, 0.06, 0.03)  # d_s / 10
    slope: tuple = (0.0, 0.0, 0.0)
    kind_id: int = field(default=KIND_MIP, init=False)
    scheme_id = "mip-acmk"

    def __post_init__(self):
        if len(self.cfs) != 3 or len(self.slope) != 3:
            raise ConfigurationError("mip-acmk needs three CFS_s and three k_s values")
        for s, (c, k, d) in enumerate(zip(self.cfs, self.slope, IDEAL_WEIGHTS)):
            if not 0.0 < c < d:
                raise ConfigurationError(
                    f"mip-acmk CFS_{s}={c} outside (0, {d})")
            if not 0.0 <= k <= d / c:
                raise ConfigurationError(
                    f"mip-acmk k_{s}={k} outside [0, {d / c}]")

    def config_args(self):
        return {"cfs": self.cfs, "kslope": self.slope}


@dataclass(frozen=True)
class MopAcmk:
    cfs0: float = 0.01
    cfs1: float = 0.94
    k0: float = 0.0
    k1: float = 0.0
    kind_id: int = field(default=KIND_MOP, init=False)
    scheme_id = "mop-acmk"

    def __post_init__(self):
        lo, hi = SORTED_IDEAL_WEIGHTS[0], SORTED_IDEAL_WEIGHTS[2]
        if not 0.0 < self.cfs0 <= lo:
            raise ConfigurationError(f"mop-acmk cfs0={self.cfs0} outside (0, {lo}]")
        if not hi <= self.cfs1 < 1.0:
            raise ConfigurationError(f"mop-acmk cfs1={self.cfs1} outside [{hi}, 1)")
        if not 0.0 <= self.k0 <= lo / self.cfs0:
            raise ConfigurationError(f"mop-acmk k0={self.k0} outside [0, {lo / self.cfs0}]")
        k1max = (1.0 - hi) / (1.0 - self.cfs1)
        if not 0.0 <= self.k1 <= k1max:
            raise ConfigurationError(f"mop-acmk k1={self.k1} outside [0, {k1max}]")

    def config_args(self):
        return {"cfs0": self.cfs0, "cfs1": self.cfs1, "k0": self.k0, "k1": self.k1}


MappingSpec = (WenoJs, WenoM, WenoPm, WenoIm, MipAcmk, MopAcmk)


def packed_params(spec) -> np.ndarray:
    """Pack a mapping spec into the flat float array the jitted kernels take."""
    p = np.zeros(_NPARAMS)
    if isinstance(spec, WenoPm):
        p[0] = spec.k
    elif isinstance(spec, WenoIm):
        p[0] = spec.k
        p[1] = spec.a
    elif isinstance(spec, MipAcmk):
        p[0:3] = spec.cfs
        p[3:6] = spec.slope
    elif isinstance(spec, MopAcmk):
        p[0], p[1], p[2], p[3] = spec.cfs0, spec.cfs1, spec.k0, spec.k1
    return p


@njit(cache=True, inline="always")
def g_scalar(kind, s, w, params):
    """Evaluate the mapping g_s(w) for one substencil index s in {0,1,2}."""
    d = D0
    if s == 1:
        d = D1
    elif s == 2:
        d = D2
    if kind == 0:  # identity
        return w
    if kind == 1:  # rational fixed-point mapping
        return w * (d + d * d - 3.0 * d * w + w * w) / (d * d + (1.0 - 2.0 * d) * w)
    if kind == 2:  # piecewise polynomial, flat at 0/1
        k = int(params[0])
        if w <= d:
            sign = 1.0 if k % 2 == 0 else -1.0
            c1 = sign * (k + 1.0) / d ** (k + 1)
            c2 = d / (k + 1.0)
        else:
            c1 = -(k + 1.0) / (1.0 - d) ** (k + 1)
            c2 = (d - (k + 2.0)) / (k + 1.0)
        return c1 * (w - d) ** (k + 1) * (w + c2) + d
    if kind == 3:  # two-parameter rational family
        k = int(params[0])
        a = params[1]
        dw = w - d
        if k == 2:  # the recommended family member, kept branch-light
            dwk = dw * dw
        else:
            dwk = dw ** k
        num = dwk * dw * a
        den = dwk * a + w * (1.0 - w)
        return d + num / den
    # the staircase families are evaluated in select form: data-dependent
    # branches on the weight mispredict heavily inside the solver loops
    if kind == 4:  # per-substencil staircase with ramps
        cfs = params[s]
        ks = params[3 + s]
        cbar = 1.0 - (1.0 - d) / d * cfs
        r = ks * w
        r = d if w >= cfs else r
        r = 1.0 - ks * (1.0 - w) if w > cbar else r
        return r
    # kind == 5: substencil-independent staircase over the sorted ideal weights
    r = params[2] * w
    r = 0.1 if w >= params[0] else r
    r = 0.3 if w >= 0.2 else r
    r = 0.6 if w >= 0.45 else r
    r = 1.0 - params[3] * (1.0 - w) if w > params[1] else r
    return r


@njit(cache=True, inline="always")
def map_weight_triple(kind, w0, w1, w2, params):
    """Map and renormalize one weight triple.

    Returns (a0, a1, a2, m0, m1, m2, fell_back): the raw mapped values, the
    renormalized triple, and whether the sum-zero fallback (keep the input
    weights) was taken.
    """
    if kind == 0:
        return w0, w1, w2, w0, w1, w2, False
    a0 = g_scalar(kind, 0, w0, params)
    a1 = g_scalar(kind, 1, w1, params)
    a2 = g_scalar(kind, 2, w2, params)
    s = a0 + a1 + a2
    if s > 0.0:
        return a0, a1, a2, a0 / s, a1 / s, a2 / s, False
    return a0, a1, a2, w0, w1, w2, True


@njit(cache=True)
def interface_value(u0, u1, u2, u3, u4, kind, params, eps):
    """Full left-biased WENO interface value with an optional weight mapping.

    The JS weights are formed division-free by cross-multiplying the
    (eps + beta)^2 denominators; that is exact up to round-off for cell data
    below ~1e30 and eps >= 1e-75, which every solver path satisfies.
    Returns (value, fell_back).
    """
    b0, b1, b2 = smoothness_indicators(u0, u1, u2, u3, u4)
    t0 = eps + b0
    t1 = eps + b1
    t2 = eps + b2
    p01 = t0 * t1
    p02 = t0 * t2
    p12 = t1 * t2
    a0 = D0 * (p12 * p12)
    a1 = D1 * (p02 * p02)
    a2 = D2 * (p01 * p01)
    rs = 1.0 / (a0 + a1 + a2)
    w0 = a0 * rs
    w1 = a1 * rs
    w2 = a2 * rs
    fb = False
    if kind != 0:
        _, _, _, w0, w1, w2, fb = map_weight_triple(kind, w0, w1, w2, params)
    q0, q1, q2 = substencil_values(u0, u1, u2, u3, u4)
    return w0 * q0 + w1 * q1 + w2 * q2, fb


def map_m(w, s):
    return g_scalar(KIND_M, s, float(w), packed_params(WenoM()))


def map_pm(w, s, k=6):
    return g_scalar(KIND_PM, s, float(w), packed_params(WenoPm(k)))


def map_im(w, s, k=2, a=0.1):
    return g_scalar(KIND_IM, s, float(w), packed_params(WenoIm(k, a)))


def map_mip_acmk(w, s, spec=None):
    spec = MipAcmk() if spec is None else spec
    return g_scalar(KIND_MIP, s, float(w), packed_params(spec))


def map_mop_acmk(w, spec=None):
    # substencil-independent: the s argument is irrelevant by construction
    spec = MopAcmk() if spec is None else spec
    return g_scalar(KIND_MOP, 0, float(w), packed_params(spec))


def g(spec, s, w):
    """Evaluate spec's mapping for substencil s at weight w."""
    return g_scalar(spec.kind_id, s, float(w), packed_params(spec))


def apply_mapping(weights, spec):
    """Map a normalized weight triple through ``spec``.

    Returns (mapped_triple, raw_alpha_triple, fell_back).  A zero alpha sum
    (possible for the staircase mappings with zero ramp slopes) falls back to
    the unmapped input triple; callers count those events.
    """
    w0, w1, w2 = (float(v) for v in weights)
    a0, a1, a2, m0, m1, m2, fb = map_weight_triple(
        spec.kind_id, w0, w1, w2, packed_params(spec))
    return (m0, m1, m2), (a0, a1, a2), bool(fb)


_PAIRS = ((0, 1), (0, 2), (1, 2))


def is_nonop_instance(w_before, alpha_raw, tol=NONOP_TOL):
    """Check one mapping event for an order-preservation violation.

    ``w_before`` is the JS weight triple, ``alpha_raw`` the raw mapped values
    g_s(w_s).  A violation is a strict ranking inversion (product below
    -tol^2) or unequal images of equal inputs; plateau-equal images of
    ordered inputs are consistent.  Returns (verdict, violating_pair|None).
    """
    for m, n in _PAIRS:
        dw = w_before[m] - w_before[n]
        da = alpha_raw[m] - alpha_raw[n]
        if abs(dw) > tol:
            if dw * da < -tol * tol:
                return True, (m, n)
        elif abs(da) > tol:
            return True, (m, n)
    return False, None


@njit(cache=True)
def _classify_grid(kind, params, npts, tol, wit):
    """Scan all ordered weight pairs on a uniform grid for OP violations.

    For each substencil pair (m, n) track the running max of g_n over all
    strictly smaller samples; a strict inversion is g_m(w_a) dropping below
    it.  Equal inputs must map to equal outputs for every (m, n).
    Returns the violation count; the first witnesses land in ``wit`` rows as
    (w_a, w_b, m, n, g_m(w_a), g_n(w_b)).
    """
    cap = wit.shape[0]
    count = 0
    gv = np.empty((3, npts))
    for i in range(npts):
        w = i / (npts - 1.0)
        for s in range(3):
            gv[s, i] = g_scalar(kind, s, w, params)
    for m in range(3):
        for n in range(3):
            rmax = -1.0
            rarg = -1
            for i in range(npts):
                wa = i / (npts - 1.0)
                if i > 0:
                    prev = gv[n, i - 1]
                    if prev > rmax:
                        rmax = prev
                        rarg = i - 1
                if rarg >= 0 and gv[m, i] < rmax - tol:
                    if count < cap:
                        wit[count, 0] = wa
                        wit[count, 1] = rarg / (npts - 1.0)
                        wit[count, 2] = m
                        wit[count, 3] = n
                        wit[count, 4] = gv[m, i]
                        wit[count, 5] = rmax
                    count += 1
                if m != n and abs(gv[m, i] - gv[n, i]) > tol:
                    if count < cap:
                        wit[count, 0] = wa
                        wit[count, 1] = wa
                        wit[count, 2] = m
                        wit[count, 3] = n
                        wit[count, 4] = gv[m, i]
                        wit[count, 5] = gv[n, i]
                    count += 1
    return count


def classify_op_set(spec, sample_count=1001, tol=NONOP_TOL, max_witnesses=10):
    """Sampling-based OP certificate for a mapping set.

    Checks g_m(w_a) >= g_n(w_b) for all m, n and all sampled w_a > w_b, plus
    image equality on w_a == w_b.  Returns (verdict, witnesses) where verdict
    is "OP" or "non-OP"; an "OP" verdict is evidence at this sampling
    density, not a proof.
    """
    if sample_count < 100:
        raise ConfigurationError(f"sample_count={sample_count} below 100")
    wit = np.zeros((max_witnesses, 6))
    count = _classify_grid(spec.kind_id, packed_params(spec),
                           int(sample_count), tol, wit)
    witnesses = [
        {"w_a": wit[i, 0], "w_b": wit[i, 1], "m": int(wit[i, 2]),
         "n": int(wit[i, 3]), "g_m": wit[i, 4], "g_n": wit[i, 5]}
        for i in range(min(count, max_witnesses))
    ]
    return ("non-OP" if count else "OP"), witnesses


def mapping_curve(spec, n_samples=1001):
    """Sample (omega, g0, g1, g2) rows for plotting a mapping family."""
    omega = np.linspace(0.0, 1.0, n_samples)
    p = packed_params(spec)
    cols = [np.array([g_scalar(spec.kind_id, s, w, p) for w in omega])
            for s in range(3)]
    return omega, cols[0], cols[1], cols[2]


_SCHEME_BUILDERS = {
    "js": WenoJs,
    "m": WenoM,
    "pm": WenoPm,
    "pm6": lambda **kw: WenoPm(**({"k": 6} | kw)),
    "im": WenoIm,
    "mip-acmk": MipAcmk,
    "mop-acmk": MopAcmk,
}


def scheme_ids():
    return sorted(_SCHEME_BUILDERS)


def make_scheme(scheme_id, **params):
    """Build a mapping spec from its config identifier plus parameters."""
    try:
        builder = _SCHEME_BUILDERS[scheme_id]
    except KeyError:
        raise ConfigurationError(
            f"unknown scheme {scheme_id!r}; known: {', '.join(scheme_ids())}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise ConfigurationError(f"bad parameters for scheme {scheme_id!r}: {exc}") from None
