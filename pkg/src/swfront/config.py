"""Scenario configuration files (YAML) with strict validation.

A config has up to five top-level sections::

    scenario: slosh
    bottom: {kind: parabolic}          # scenarios on a general bottom only
    initial: {gamma0: -7, mu0: 1, beta0: -1}
    numerics: {tol: 1.0e-10, output_times: [0, 0.3, 0.6]}
    output: {dir: out/slosh}

Unknown keys are errors.  All violations are collected and reported
together, each prefixed by its location (``initial.gamma0: ...``).
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

import yaml

from .bathymetry import BottomProfile
from .errors import ConfigError, DomainError

KINDS = ("slosh", "blowup", "pw-parabola-flat", "pw-parabola-parabolic",
         "vacuum-hierarchy", "period-curve", "blowup-curve", "validate")

SLOSH_TIMES = [0.0, 0.30, 0.60, 1.11, 1.60, 2.00, 2.22, 2.50]

REQUIRED = object()

# per-kind defaults; REQUIRED marks mandatory keys, None means "derived at run time"
_NUMERIC_COMMON = {"tol": 1e-10, "output_times": None, "points": 401}
_REFSOLVER = {"resolution": 0, "cfl": 0.45, "order": 2}

SCHEMA = {
    "slosh": {
        "initial": {"gamma0": REQUIRED, "mu0": REQUIRED, "beta0": 0.0, "delta0": 0.0, "alpha0": 0.0},
        "numerics": {**_NUMERIC_COMMON, "output_times": SLOSH_TIMES, "t_end": None, **_REFSOLVER},
    },
    "blowup": {
        "initial": {"gamma0": REQUIRED, "mu0": REQUIRED, "beta0": 0.0, "delta0": 0.0, "alpha0": 0.0},
        "numerics": {**_NUMERIC_COMMON},
    },
    "pw-parabola-flat": {
        "initial": {"Q": 1.0, "gamma0": REQUIRED, "mu0": REQUIRED},
        "numerics": {**_NUMERIC_COMMON, "labels": 2048, "threshold": 10.0, **_REFSOLVER},
    },
    "pw-parabola-parabolic": {
        "bottom": {"kind": "parabolic"},
        "initial": {"x0": REQUIRED, "zeta_slope": REQUIRED},
        "numerics": {**_NUMERIC_COMMON, "t_end": 1.0, **_REFSOLVER},
    },
    "vacuum-hierarchy": {
        "bottom": {"kind": "parabolic"},
        "initial": {"kind": "physical", "X0": REQUIRED, "u": REQUIRED, "eta": REQUIRED, "u_dry": None},
        "numerics": {**_NUMERIC_COMMON, "t_end": 1.0},
    },
    "period-curve": {
        "numerics": {"gamma_min": -0.999, "gamma_max": -0.001, "points": 200},
    },
    "blowup-curve": {
        "numerics": {"gamma_min": 1e-3, "gamma_max": 1e3, "points": 200},
    },
    "validate": {},
}

OUTPUT_DEFAULTS = {"dir": None, "prefix": None, "figures": True}


@dataclass
class ScenarioConfig:
    kind: str
    initial: dict = field(default_factory=dict)
    numerics: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    bottom: BottomProfile | None = None
    bottom_spec: dict | None = None

    def to_dict(self):
        d = {"scenario": self.kind}
        if self.bottom_spec is not None:
            d["bottom"] = copy.deepcopy(self.bottom_spec)
        for sec in ("initial", "numerics", "output"):
            if getattr(self, sec):
                d[sec] = copy.deepcopy(getattr(self, sec))
        return d


def _number(v):
    """Float value of a YAML scalar; PyYAML reads ``1e-10`` as a string."""
    if isinstance(v, bool):
        raise TypeError
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        return float(v)
    raise TypeError


def _check_number(errors, loc, v, finite=True):
    try:
        x = _number(v)
    except (TypeError, ValueError):
        errors.append(f"{loc}: expected a number, got {v!r}")
        return None
    if finite and not math.isfinite(x):
        errors.append(f"{loc}: must be finite")
        return None
    return x


def _number_list(errors, loc, v):
    if not isinstance(v, list):
        errors.append(f"{loc}: expected a list of numbers")
        return None
    out = []
    for i, item in enumerate(v):
        x = _check_number(errors, f"{loc}[{i}]", item)
        if x is None:
            return None
        out.append(x)
    return out


def _section(errors, raw, name, schema_sec):
    """Merge defaults with user keys; flags unknown and missing keys."""
    user = raw.get(name, {})
    if user is None:
        user = {}
    if not isinstance(user, dict):
        errors.append(f"{name}: expected a mapping")
        user = {}
    for key in user:
        if key not in schema_sec:
            allowed = ", ".join(sorted(schema_sec)) or "nothing"
            errors.append(f"{name}.{key}: unknown key (allowed: {allowed})")
    merged = {}
    for key, default in schema_sec.items():
        if key in user:
            merged[key] = user[key]
        elif default is REQUIRED:
            errors.append(f"{name}.{key}: required")
        else:
            merged[key] = copy.deepcopy(default)
    return merged


def _validate_numerics(errors, kind, num):
    if "tol" in num:
        tol = _check_number(errors, "numerics.tol", num["tol"])
        if tol is not None and not 0 < tol <= 1e-3:
            errors.append("numerics.tol: must lie in (0, 1e-3]")
        num["tol"] = tol
    if "t_end" in num and num["t_end"] is not None:
        t_end = _check_number(errors, "numerics.t_end", num["t_end"])
        if t_end is not None and not t_end > 0:
            errors.append("numerics.t_end: must be positive")
        num["t_end"] = t_end
    if num.get("output_times") is not None:
        times = _number_list(errors, "numerics.output_times", num["output_times"])
        if times is not None:
            if any(t < 0 for t in times):
                errors.append("numerics.output_times: times must be nonnegative")
            if any(b <= a for a, b in zip(times, times[1:])):
                errors.append("numerics.output_times: times must be strictly increasing")
        num["output_times"] = times
    for key, lo in (("points", 2), ("labels", 8)):
        if key in num:
            v = num[key]
            if isinstance(v, bool) or not isinstance(v, int) or v < lo:
                errors.append(f"numerics.{key}: must be an integer >= {lo}")
    if "resolution" in num:
        v = num["resolution"]
        if isinstance(v, bool) or not isinstance(v, int) or (v != 0 and v < 16):
            errors.append("numerics.resolution: must be 0 (no reference run) or an integer >= 16")
    if "cfl" in num:
        cfl = _check_number(errors, "numerics.cfl", num["cfl"])
        if cfl is not None and not 0 < cfl <= 1:
            errors.append("numerics.cfl: must lie in (0, 1]")
        num["cfl"] = cfl
    if "order" in num and num["order"] not in (1, 2):
        errors.append("numerics.order: must be 1 or 2")
    if "threshold" in num:
        th = _check_number(errors, "numerics.threshold", num["threshold"])
        if th is not None and not th > 1:
            errors.append("numerics.threshold: must exceed 1")
        num["threshold"] = th
    for key in ("gamma_min", "gamma_max"):
        if key in num:
            num[key] = _check_number(errors, f"numerics.{key}", num[key])
    lo, hi = num.get("gamma_min"), num.get("gamma_max")
    if lo is not None and hi is not None:
        if not lo < hi:
            errors.append("numerics.gamma_max: must exceed gamma_min")
        elif kind == "period-curve" and not (-1.0 < lo and hi < 0.0):
            errors.append("numerics.gamma_min: sloshing curve needs -1 < gamma_min < gamma_max < 0")
        elif kind == "blowup-curve" and not lo > 0:
            errors.append("numerics.gamma_min: blow-up curve needs 0 < gamma_min < gamma_max")


def _validate_initial(errors, kind, ini, bottom):
    for key, v in list(ini.items()):
        if key in ("kind", "u", "eta", "u_dry"):
            continue
        ini[key] = _check_number(errors, f"initial.{key}", v)
    g = ini.get("gamma0")
    mu = ini.get("mu0")
    if kind in ("slosh", "blowup", "pw-parabola-flat") and g is not None:
        if g == 0:
            errors.append("initial.gamma0: curvature must be nonzero")
        elif kind in ("slosh", "pw-parabola-flat") and g > 0:
            errors.append(f"initial.gamma0: {kind} needs a negative curvature (got {g})")
        elif kind == "blowup" and g < 0:
            errors.append("initial.gamma0: blowup needs a positive curvature (use slosh for gamma0 < 0)")
    if kind in ("slosh", "blowup") and mu is not None and not mu > 0:
        errors.append("initial.mu0: apex thickness must be positive")
    if kind == "pw-parabola-flat":
        Q = ini.get("Q")
        if Q is not None and not Q > 0:
            errors.append("initial.Q: background depth must be positive")
        elif Q is not None and mu is not None and not mu > Q:
            errors.append(f"initial.mu0: corner must be wet (mu0 > Q, got mu0={mu}, Q={Q})")
    if kind == "pw-parabola-parabolic" and bottom is not None:
        x0 = ini.get("x0")
        if x0 is not None and not bottom.eval(x0) < 0:
            errors.append(f"initial.x0: corner must be wet (bottom at x0 is {bottom.eval(x0)})")
        zs = ini.get("zeta_slope")
        if zs is not None and zs == 0:
            errors.append("initial.zeta_slope: a zero slope has no corner")
    if kind == "vacuum-hierarchy":
        if ini.get("kind") not in ("physical", "nonphysical"):
            errors.append("initial.kind: must be 'physical' or 'nonphysical'")
        arrays = {}
        for key in ("u", "eta", "u_dry"):
            if ini.get(key) is not None:
                arrays[key] = _number_list(errors, f"initial.{key}", ini[key])
                ini[key] = arrays[key]
        if ini.get("X0") is not None and None not in arrays.values() and "u" in arrays and "eta" in arrays:
            from .hierarchy import vacuum_front
            try:
                vacuum_front(ini["kind"], ini["X0"], arrays["u"], arrays["eta"], 0.0, arrays.get("u_dry"))
            except (DomainError, ValueError) as exc:
                errors.append(f"initial: {exc}")


def parse_config(text, strict=True) -> ScenarioConfig:
    """Parse YAML text into a validated :class:`ScenarioConfig`.

    Raises :class:`ConfigError` listing every violation found.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "input"
        raise ConfigError([f"{where}: {getattr(exc, 'problem', exc)}"])
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(["<root>: expected a mapping"])
    return config_from_dict(raw, strict)


def config_from_dict(raw, strict=True) -> ScenarioConfig:
    errors = []
    kind = raw.get("scenario")
    if kind is None:
        errors.append("scenario: required (one of " + ", ".join(KINDS) + ")")
        raise ConfigError(errors)
    if kind not in KINDS:
        raise ConfigError([f"scenario: unknown kind {kind!r} (one of {', '.join(KINDS)})"])
    schema = SCHEMA[kind]
    allowed_top = {"scenario", "output"} | set(schema)
    if strict:
        for key in raw:
            if key not in allowed_top:
                errors.append(f"{key}: unknown section for scenario {kind!r}")

    bottom = None
    bottom_spec = None
    if "bottom" in schema:
        spec = raw.get("bottom", schema["bottom"])
        if not isinstance(spec, dict) or "kind" not in spec:
            errors.append("bottom: expected a mapping with a 'kind' key")
        else:
            for key in spec:
                if key not in ("kind", "coeffs"):
                    errors.append(f"bottom.{key}: unknown key (allowed: coeffs, kind)")
            try:
                coeffs = [_number(c) for c in spec.get("coeffs", [])]
                bottom_spec = {"kind": spec["kind"], **({"coeffs": coeffs} if coeffs else {})}
                bottom = BottomProfile.from_spec(bottom_spec)
            except (TypeError, ValueError) as exc:
                errors.append(f"bottom: {exc}" if str(exc) else "bottom.coeffs: expected numbers")

    ini = _section(errors, raw, "initial", schema.get("initial", {}))
    num = _section(errors, raw, "numerics", schema.get("numerics", {}))
    out = _section(errors, raw, "output", OUTPUT_DEFAULTS)
    _validate_initial(errors, kind, ini, bottom)
    _validate_numerics(errors, kind, num)
    if kind in ("period-curve", "blowup-curve"):
        lo, hi = num.get("gamma_min"), num.get("gamma_max")
        if lo is not None and hi is not None:
            if not lo < hi:
                errors.append("numerics.gamma_min: must be below gamma_max")
            if kind == "period-curve" and not (-1 < lo and hi < 0):
                errors.append("numerics: period curve needs -1 < gamma_min < gamma_max < 0")
            if kind == "blowup-curve" and not lo > 0:
                errors.append("numerics.gamma_min: blow-up curve needs gamma_min > 0")
    if out.get("dir") is not None and not isinstance(out["dir"], str):
        errors.append("output.dir: expected a path string")
    if out.get("prefix") is not None and not isinstance(out["prefix"], str):
        errors.append("output.prefix: expected a string")
    if not isinstance(out.get("figures"), bool):
        errors.append("output.figures: expected true or false")
    if errors:
        raise ConfigError(errors)
    out["dir"] = out["dir"] or f"out/{kind}"
    out["prefix"] = out["prefix"] or kind.replace("-", "_")
    return ScenarioConfig(kind, ini, num, out, bottom, bottom_spec)


def load_config(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def with_param(cfg: ScenarioConfig, dotted, value) -> ScenarioConfig:
    """Copy of ``cfg`` with ``section.key`` set to ``value``, revalidated."""
    raw = cfg.to_dict()
    parts = dotted.split(".")
    if len(parts) != 2:
        raise ConfigError([f"{dotted}: expected 'section.key'"])
    sec, key = parts
    raw.setdefault(sec, {})
    if not isinstance(raw[sec], dict):
        raise ConfigError([f"{dotted}: section is not a mapping"])
    old = raw[sec].get(key)
    # sweep grids arrive as floats; keep integer settings integral
    if isinstance(old, int) and not isinstance(old, bool) and float(value).is_integer():
        value = int(value)
    raw[sec][key] = value
    return config_from_dict(raw)
