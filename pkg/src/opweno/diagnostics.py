"""Error norms, convergence orders, weight-mapping diagnostics, and the
plot-ready CSV formats.

The non-OP scanner and the mapping trace attach to :func:`opweno.solver.advance_to`
as hooks on 1D scalar runs.  Locations are reported at cell centers: the
left-biased reconstruction at interface j+1/2 and the right-biased one at
interface j-1/2 are both centered on cell j, which is where an
order-inverting mapping event is attributed.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ConfigurationError
from .grid import CellField1D
from .kernels import DEFAULT_EPS, js_weights, smoothness_indicators
from .mappings import NONOP_TOL, map_weight_triple, packed_params

_PAIRS = ((0, 1), (0, 2), (1, 2))


def error_norms(numeric: CellField1D, exact: CellField1D):
    """(L1, L2, Linf) of the cell-average error, L1/L2 scaled by the cell width."""
    if numeric.grid != exact.grid:
        raise ConfigurationError("error norms need both fields on the same grid")
    h = numeric.grid.dx
    e = np.abs(numeric.interior - exact.interior)
    return (h * e.sum(), float(np.sqrt(h * (e * e).sum())), float(e.max()))


def convergence_orders(errors):
    """log2 ratios of consecutive errors on resolution-doubling sequences.

    Zero entries make the order undefined; those slots are None.
    """
    if len(errors) < 2:
        raise ConfigurationError("need at least two resolutions for orders")
    out = []
    for a, b in zip(errors[:-1], errors[1:]):
        out.append(float(np.log2(a / b)) if a > 0 and b > 0 else None)
    return out


def increased_error_pct(err_x, err_ref):
    """Percentage increase of err_x over the reference; None if undefined."""
    if err_ref is None or err_ref <= 0:
        return None
    return (err_x - err_ref) / err_ref * 100.0


def overshoot_metric(field: CellField1D, lower, upper):
    """(max overshoot above upper, max undershoot below lower) of the field."""
    u = field.interior
    return (max(0.0, float(u.max()) - upper), max(0.0, lower - float(u.min())))


def _isotonic_fit(y):
    """Nondecreasing least-squares fit by pooling adjacent violators."""
    vals = []
    counts = []
    for v in y:
        vals.append(float(v))
        counts.append(1)
        while len(vals) > 1 and vals[-2] > vals[-1]:
            v2, c2 = vals.pop(), counts.pop()
            v1, c1 = vals.pop(), counts.pop()
            vals.append((v1 * c1 + v2 * c2) / (c1 + c2))
            counts.append(c1 + c2)
    out = np.empty(len(y))
    i = 0
    for v, c in zip(vals, counts):
        out[i:i + c] = v
        i += c
    return out


def envelope_overshoot(values, smooth_width=15):
    """Largest excursion of a slice from its local monotone envelope.

    The slice is segmented at the extrema of a moving-average copy (so broad
    legitimate humps split into monotone pieces); each segment gets an
    isotonic least-squares fit in its direction, which is the envelope.
    Data that is monotone between its genuine extrema, discretized jumps
    included, scores zero; spurious ripples protrude by roughly half their
    amplitude.  Returns (overshoot above, undershoot below).
    """
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return 0.0, 0.0
    w = max(1, int(smooth_width))
    kernel = np.ones(w) / w
    sm = np.convolve(np.pad(v, w, mode="edge"), kernel, mode="same")[w:-w]
    d = np.sign(np.diff(sm))
    d[d == 0] = 1
    flips = np.nonzero(d[:-1] * d[1:] < 0)[0] + 1
    bounds = [0, *flips.tolist(), v.size - 1]
    over = under = 0.0
    for a, b in zip(bounds[:-1], bounds[1:]):
        seg = v[a:b + 1]
        if seg.size < 2:
            continue
        fit = _isotonic_fit(seg) if d[a] > 0 else _isotonic_fit(seg[::-1])[::-1]
        over = max(over, float((seg - fit).max()))
        under = max(under, float((fit - seg).max()))
    return over, under


# ---------------------------------------------------------------------------
# isolated-discontinuity weight probe

PROBE_SUBSTENCIL_VALUES = (1.0, 1.0, -1.0)
PROBE_EXACT = 1.0


@dataclass(frozen=True)
class ProbeCase:
    label: str
    weights: tuple


# weight triples of the highlighted mapping events: for each family, the JS
# weights, the rank-inverting mapped weights, and the same values restored to
# the JS ranking
DEFAULT_PROBE_CASES = (
    ProbeCase("pm6-c1-js", (0.37291, 0.53663, 0.09046)),
    ProbeCase("pm6-c1-nonop", (0.10939, 0.64825, 0.24236)),
    ProbeCase("pm6-c1-op", (0.24236, 0.64825, 0.10939)),
    ProbeCase("im-a2-js", (0.57568, 0.38416, 0.04016)),
    ProbeCase("im-a2-nonop", (0.14069, 0.59737, 0.26194)),
    ProbeCase("im-a2-op", (0.59737, 0.26194, 0.14069)),
    ProbeCase("mip-c3-js", (0.54547, 0.39684, 0.05769)),
    ProbeCase("mip-c3-nonop", (0.10000, 0.60000, 0.30000)),
    ProbeCase("mip-c3-op", (0.60000, 0.30000, 0.10000)),
)


def discontinuity_probe(cases=DEFAULT_PROBE_CASES):
    """Interface values from prescribed weights on the (1, 1, -1) substencils.

    Returns rows (label, w0, w1, w2, u, err, pct) with the error taken
    against the exact upstream value 1.
    """
    rows = []
    for case in cases:
        w0, w1, w2 = case.weights
        q0, q1, q2 = PROBE_SUBSTENCIL_VALUES
        u = w0 * q0 + w1 * q1 + w2 * q2
        err = abs(u - PROBE_EXACT)
        rows.append((case.label, w0, w1, w2, u, err, err * 100.0))
    return rows


# ---------------------------------------------------------------------------
# run-time scanning hooks (1D scalar advection)

@dataclass(frozen=True)
class NonOpRecord:
    t: float
    step: int
    stage: int
    cell: int
    x: float
    bias: str       # "L": left-biased at j+1/2, "R": right-biased at j-1/2
    w: tuple        # JS weights before mapping
    g: tuple        # raw mapped values g_s(w_s)
    pair: tuple     # first rank-violating (m, n)


@dataclass(frozen=True)
class MappingTraceRecord:
    t: float
    x: float
    s: int
    omega: float
    g: float


@njit(cache=True)
def _scan_cells_nb(uext, n, ng, kind, params, eps, wout, aout):
    """Per-cell JS weights and raw mapped values for both biases.

    wout/aout have shape (2, n, 3); bias 0 is the forward (left-biased)
    window, bias 1 the reversed (right-biased) one.
    """
    for j in range(n):
        c = ng + j
        b0, b1, b2 = smoothness_indicators(uext[c - 2], uext[c - 1], uext[c],
                                           uext[c + 1], uext[c + 2])
        w0, w1, w2 = js_weights(b0, b1, b2, eps)
        a0, a1, a2, _, _, _, _ = map_weight_triple(kind, w0, w1, w2, params)
        wout[0, j, 0] = w0
        wout[0, j, 1] = w1
        wout[0, j, 2] = w2
        aout[0, j, 0] = a0
        aout[0, j, 1] = a1
        aout[0, j, 2] = a2
        b0, b1, b2 = smoothness_indicators(uext[c + 2], uext[c + 1], uext[c],
                                           uext[c - 1], uext[c - 2])
        w0, w1, w2 = js_weights(b0, b1, b2, eps)
        a0, a1, a2, _, _, _, _ = map_weight_triple(kind, w0, w1, w2, params)
        wout[1, j, 0] = w0
        wout[1, j, 1] = w1
        wout[1, j, 2] = w2
        aout[1, j, 0] = a0
        aout[1, j, 1] = a1
        aout[1, j, 2] = a2


def _scan_field(field, spec, eps):
    if not isinstance(field, CellField1D) or field.ncomp != 1:
        raise ConfigurationError("weight scans are defined for 1D scalar runs only")
    g = field.grid
    n = g.n_cells
    w = np.empty((2, n, 3))
    a = np.empty((2, n, 3))
    _scan_cells_nb(field.values[0], n, g.n_ghost, spec.kind_id,
                   packed_params(spec), eps, w, a)
    return w, a


def _nonop_mask(w, a, tol):
    """Vectorized Definition-of-non-OP predicate; returns (mask, first pair index)."""
    viol = np.zeros(w.shape[:-1], dtype=bool)
    first = np.full(w.shape[:-1], -1, dtype=np.int64)
    for k in reversed(range(len(_PAIRS))):
        m, n = _PAIRS[k]
        dw = w[..., m] - w[..., n]
        da = a[..., m] - a[..., n]
        bad = np.where(np.abs(dw) > tol, dw * da < -tol * tol, np.abs(da) > tol)
        viol |= bad
        first[bad] = k
    return viol, first


class NonOpScanHook:
    """Detects mapping events that invert the weight ranking.

    ``schedule`` "every-stage" scans each Runge-Kutta stage input (both
    biases); "final-only" skips the per-stage scans.  The final output state
    is always scanned into ``snapshot_records``.
    """

    def __init__(self, spec, eps=DEFAULT_EPS, schedule="every-stage",
                 tol=NONOP_TOL, record_limit=1_000_000):
        if schedule not in ("every-stage", "final-only"):
            raise ConfigurationError(f"unknown scan schedule {schedule!r}")
        self.spec = spec
        self.eps = eps
        self.schedule = schedule
        self.tol = tol
        self.record_limit = record_limit
        self.records = []
        self.total_count = 0
        self.stage_counts = {}
        self.snapshot_records = []

    def _collect(self, field, t, step, stage, sink):
        w, a = _scan_field(field, self.spec, self.eps)
        viol, first = _nonop_mask(w, a, self.tol)
        count = int(viol.sum())
        if count and len(sink) < self.record_limit:
            centers = field.grid.centers()
            for bias_idx, bias in enumerate("LR"):
                for j in np.nonzero(viol[bias_idx])[0]:
                    sink.append(NonOpRecord(
                        t, step, stage, int(j), float(centers[j]), bias,
                        tuple(w[bias_idx, j]), tuple(a[bias_idx, j]),
                        _PAIRS[first[bias_idx, j]]))
        return count

    def on_stage(self, field, t, step, stage):
        if self.schedule != "every-stage":
            return
        count = self._collect(field, t, step, stage, self.records)
        self.total_count += count
        if count:
            self.stage_counts[(step, stage)] = count

    def finalize(self, field, t, steps):
        self._collect(field, t, steps, -1, self.snapshot_records)

    @property
    def unique_cells(self):
        return sorted({r.cell for r in self.records})

    @property
    def snapshot_cells(self):
        return sorted({r.cell for r in self.snapshot_records})


class MappingTraceHook:
    """Records the realized (omega, g(omega)) pairs of a run.

    ``every_steps=0`` samples only the final state (the published scatter
    plots show the output time); a positive cadence also samples stage 0 of
    every ``every_steps``-th step.
    """

    def __init__(self, spec, eps=DEFAULT_EPS, every_steps=0):
        self.spec = spec
        self.eps = eps
        self.every_steps = int(every_steps)
        self.records = []

    def _collect(self, field, t):
        w, a = _scan_field(field, self.spec, self.eps)
        centers = field.grid.centers()
        for bias in (0, 1):
            for j in range(w.shape[1]):
                x = float(centers[j])
                for s in range(3):
                    self.records.append(MappingTraceRecord(
                        t, x, s, float(w[bias, j, s]), float(a[bias, j, s])))

    def on_stage(self, field, t, step, stage):
        if self.every_steps and stage == 0 and step % self.every_steps == 0:
            self._collect(field, t)

    def finalize(self, field, t, steps):
        self._collect(field, t)


# ---------------------------------------------------------------------------
# CSV formats (17 significant digits for lossless float round trips)

def fmt(x) -> str:
    return format(float(x), ".17g")


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_errors_csv(path, rows, reference_scheme=None):
    """Rows: (scheme, N, l1, l2, linf, order1, order2, orderinf[, inc1, inc2, incinf])."""
    header = ["scheme", "N", "L1", "L2", "Linf", "order1", "order2", "orderinf"]
    if reference_scheme is not None:
        header += ["incL1", "incL2", "incLinf"]
    out = []
    for row in rows:
        scheme, n = row[0], row[1]
        rest = ["" if v is None else fmt(v) for v in row[2:]]
        out.append([scheme, str(int(n))] + rest)
    _write_rows(path, header, out)


def write_nonop_csv(path, records):
    rows = [(fmt(r.t), r.step, r.stage, fmt(r.x), r.bias,
             fmt(r.w[0]), fmt(r.w[1]), fmt(r.w[2]),
             fmt(r.g[0]), fmt(r.g[1]), fmt(r.g[2]),
             f"{r.pair[0]}-{r.pair[1]}") for r in records]
    _write_rows(path, ["t", "step", "stage", "x", "bias",
                       "w0", "w1", "w2", "g0", "g1", "g2", "pair"], rows)


def read_nonop_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        records = []
        for row in reader:
            pair = tuple(int(p) for p in row["pair"].split("-"))
            records.append(NonOpRecord(
                float(row["t"]), int(row["step"]), int(row["stage"]), -1,
                float(row["x"]), row["bias"],
                (float(row["w0"]), float(row["w1"]), float(row["w2"])),
                (float(row["g0"]), float(row["g1"]), float(row["g2"])), pair))
    return records


def write_trace_csv(path, records):
    rows = [(fmt(r.t), fmt(r.x), r.s, fmt(r.omega), fmt(r.g)) for r in records]
    _write_rows(path, ["t", "x", "s", "omega", "g"], rows)


def read_trace_csv(path):
    with open(path, newline="") as fh:
        return [MappingTraceRecord(float(r["t"]), float(r["x"]), int(r["s"]),
                                   float(r["omega"]), float(r["g"]))
                for r in csv.DictReader(fh)]


def write_probe_csv(path, rows):
    out = [(label,) + tuple(fmt(v) for v in vals) for label, *vals in rows]
    _write_rows(path, ["label", "w0", "w1", "w2", "u", "err", "pct"], out)


def read_probe_csv(path):
    with open(path, newline="") as fh:
        return [(r["label"], float(r["w0"]), float(r["w1"]), float(r["w2"]),
                 float(r["u"]), float(r["err"]), float(r["pct"]))
                for r in csv.DictReader(fh)]


def write_solution_csv_1d(path, field: CellField1D):
    x = field.grid.centers()
    u = field.interior[0]
    _write_rows(path, ["x", "u"], [(fmt(a), fmt(b)) for a, b in zip(x, u)])


def read_solution_csv_1d(path):
    with open(path, newline="") as fh:
        rows = [(float(r["x"]), float(r["u"])) for r in csv.DictReader(fh)]
    return np.array([r[0] for r in rows]), np.array([r[1] for r in rows])


def write_solution_csv_2d(path, field, gamma=1.4):
    from .euler2d import cons_to_prim

    grid = field.grid
    rho, u, v, p = cons_to_prim(field.interior, gamma)
    xc, yc = grid.x_centers(), grid.y_centers()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "rho", "u", "v", "p"])
        for jy in range(grid.ny):
            for ix in range(grid.nx):
                writer.writerow((fmt(xc[ix]), fmt(yc[jy]), fmt(rho[jy, ix]),
                                 fmt(u[jy, ix]), fmt(v[jy, ix]), fmt(p[jy, ix])))


def read_solution_csv_2d(path):
    with open(path, newline="") as fh:
        rows = [tuple(float(r[k]) for k in ("x", "y", "rho", "u", "v", "p"))
                for r in csv.DictReader(fh)]
    return np.array(rows)


def write_summary_json(path, summary):
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
