"""Flat key=value run configuration: parsing, validation, canonical formatting.

Grammar: whitespace- or newline-separated ``key=value`` tokens, ``#`` starts
a comment to end of line.  ``preset=<experiment>`` pulls the canonical
parameters of a registered experiment; explicit keys override the preset.
Unknown keys and out-of-range parameters are configuration errors.
"""

from dataclasses import dataclass, field, replace

from .errors import ConfigurationError
from .kernels import DEFAULT_EPS
from .mappings import make_scheme
from .problems import get_problem, registry_lookup


@dataclass(frozen=True)
class RunConfig:
    problem: str
    scheme_id: str = "js"
    scheme_params: tuple = ()        # sorted (key, value) pairs
    schemes: tuple = ()              # sweep scheme ids (defaults per scheme)
    resolutions: tuple = ()
    cfl: float = 0.1
    dt_mode: str = "fixed-cfl"
    t_end: float = 2.0
    eps: float = DEFAULT_EPS
    nonop_scan: bool = False
    mapping_trace: bool = False
    overshoot: bool = False
    outdir: str = ""
    reference_scheme: str = ""
    log_every: int = 0               # progress lines to stderr every k steps

    @property
    def scheme(self):
        return make_scheme(self.scheme_id, **dict(self.scheme_params))

    def sweep_schemes(self):
        ids = self.schemes if self.schemes else (self.scheme_id,)
        out = []
        for sid in ids:
            params = dict(self.scheme_params) if sid == self.scheme_id else {}
            out.append((sid, make_scheme(sid, **params)))
        return out


_SCHEME_PARAM_KEYS = {
    "k": ("k", int),
    "a": ("a", float),
    "cfs0": ("cfs0", float),
    "cfs1": ("cfs1", float),
    "k0": ("k0", float),
    "k1": ("k1", float),
}
_BOOL_KEYS = ("nonop_scan", "mapping_trace", "overshoot")
_KNOWN_KEYS = {"preset", "problem", "scheme", "schemes", "n", "cfl", "t_end",
               "eps", "outdir", "reference_scheme", "cfs", "kslope",
               "log_every", *_SCHEME_PARAM_KEYS, *_BOOL_KEYS}


def _parse_bool(key, value):
    v = value.lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise ConfigurationError(f"{key}={value!r} is not a boolean")


def _tokenize(text):
    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for token in line.split():
            if "=" not in token:
                raise ConfigurationError(f"malformed token {token!r}, expected key=value")
            key, value = token.split("=", 1)
            pairs.append((key.strip(), value.strip()))
    return pairs


def parse_config(text) -> RunConfig:
    pairs = _tokenize(text)
    seen = {}
    for key, value in pairs:
        lk = key.lower()
        if lk not in _KNOWN_KEYS:
            raise ConfigurationError(f"unknown configuration key {key!r}")
        if lk in seen:
            raise ConfigurationError(f"duplicate configuration key {key!r}")
        seen[lk] = value

    kw = {}
    preset = None
    if "preset" in seen:
        preset = registry_lookup(seen.pop("preset"))
        kw.update(problem=preset.problem, resolutions=preset.resolutions,
                  t_end=preset.t_end, cfl=preset.cfl, dt_mode=preset.dt_mode,
                  eps=preset.eps)

    if "problem" in seen:
        kw["problem"] = seen.pop("problem")
    if "problem" not in kw:
        raise ConfigurationError("missing required key 'problem' (or a preset)")
    get_problem(kw["problem"])

    if "n" in seen:
        try:
            kw["resolutions"] = tuple(int(v) for v in seen.pop("n").split(","))
        except ValueError as exc:
            raise ConfigurationError(f"bad N list: {exc}") from None
    if "cfl" in seen:
        value = seen.pop("cfl")
        if value == "accuracy":
            kw["dt_mode"] = "accuracy-cfl"
        else:
            try:
                kw["cfl"] = float(value)
            except ValueError:
                raise ConfigurationError(f"cfl={value!r} is neither a number "
                                         "nor 'accuracy'") from None
            kw["dt_mode"] = "fixed-cfl"
            if kw["cfl"] <= 0:
                raise ConfigurationError(f"cfl={value} must be positive")
    for key, conv in (("t_end", float), ("eps", float)):
        if key in seen:
            try:
                kw[key] = conv(seen.pop(key))
            except ValueError as exc:
                raise ConfigurationError(f"bad {key}: {exc}") from None
    if kw.get("eps", 1.0) <= 0.0:
        raise ConfigurationError(f"eps={kw['eps']} must be positive")
    for key in _BOOL_KEYS:
        if key in seen:
            kw[key] = _parse_bool(key, seen.pop(key))
    for key in ("outdir", "reference_scheme"):
        if key in seen:
            kw[key] = seen.pop(key)
    if "log_every" in seen:
        try:
            kw["log_every"] = int(seen.pop("log_every"))
        except ValueError as exc:
            raise ConfigurationError(f"bad log_every: {exc}") from None

    params = {}
    for key, (name, conv) in _SCHEME_PARAM_KEYS.items():
        if key in seen:
            try:
                params[name] = conv(seen.pop(key))
            except ValueError as exc:
                raise ConfigurationError(f"bad {key}: {exc}") from None
    for key, name in (("cfs", "cfs"), ("kslope", "slope")):
        if key in seen:
            try:
                params[name] = tuple(float(v) for v in seen.pop(key).split(","))
            except ValueError as exc:
                raise ConfigurationError(f"bad {key}: {exc}") from None

    scheme_id = seen.pop("scheme", "js")
    if "schemes" in seen:
        kw["schemes"] = tuple(seen.pop("schemes").split(","))
        for sid in kw["schemes"]:
            make_scheme(sid)
    # validate scheme id and parameter ranges now so errors carry the key name
    spec = make_scheme(scheme_id, **params)
    kw["scheme_id"] = scheme_id
    kw["scheme_params"] = tuple(sorted(params.items()))

    cfg = RunConfig(**kw)
    if kw.get("reference_scheme"):
        make_scheme(kw["reference_scheme"])
    if not cfg.resolutions:
        cfg = replace(cfg, resolutions=(get_default_resolutions(cfg.problem)))
    for n in cfg.resolutions:
        if n < 5:
            raise ConfigurationError(f"N={n} below the 5-point stencil width")
    prob = get_problem(cfg.problem)
    if prob.dimension == 2 and (cfg.nonop_scan or cfg.mapping_trace):
        raise ConfigurationError("weight scans/traces are available on 1D runs only")
    return cfg


def get_default_resolutions(problem):
    defaults = {"riemann2d-c4": (200,), "shock-vortex": (200,)}
    return defaults.get(problem, (200,))


_PARAM_FORMAT_KEYS = {"k": "k", "a": "A", "cfs0": "cfs0", "cfs1": "cfs1",
                      "k0": "k0", "k1": "k1", "cfs": "cfs", "slope": "kslope"}


def format_config(cfg: RunConfig) -> str:
    """Canonical one-key-per-line rendering; reparses to an equal RunConfig."""
    lines = [f"problem={cfg.problem}", f"scheme={cfg.scheme_id}"]
    for key, value in cfg.scheme_params:
        name = _PARAM_FORMAT_KEYS[key]
        if isinstance(value, tuple):
            lines.append(f"{name}={','.join(format(v, '.17g') for v in value)}")
        elif isinstance(value, int):
            lines.append(f"{name}={value}")
        else:
            lines.append(f"{name}={format(value, '.17g')}")
    if cfg.schemes:
        lines.append(f"schemes={','.join(cfg.schemes)}")
    lines.append(f"N={','.join(str(n) for n in cfg.resolutions)}")
    if cfg.dt_mode == "accuracy-cfl":
        lines.append("cfl=accuracy")
    else:
        lines.append(f"cfl={format(cfg.cfl, '.17g')}")
    lines.append(f"t_end={format(cfg.t_end, '.17g')}")
    lines.append(f"eps={format(cfg.eps, '.17g')}")
    for key in _BOOL_KEYS:
        if getattr(cfg, key):
            lines.append(f"{key}=true")
    if cfg.log_every:
        lines.append(f"log_every={cfg.log_every}")
    if cfg.outdir:
        lines.append(f"outdir={cfg.outdir}")
    if cfg.reference_scheme:
        lines.append(f"reference_scheme={cfg.reference_scheme}")
    return "\n".join(lines) + "\n"
