"""Experiment configuration: a nested JSON document.

Example (every key except ``params`` is optional)::

    {
      "params": {"alpha1": 1, "alpha2": 1, "alpha3": 1, "sigma": 2},
      "grid": {"L": 30, "N": 1024},
      "ic": {"kind": "gaussian", "amplitude": 1, "width": 1, "center": 0},
      "psi_t0": {"kind": "zero"},
      "control": {"dt": "auto", "t_max": 2, "snapshot_stride": 100, "blowup_threshold": 1e6},
      "dealias": true,
      "stepper": "rk4",
      "perturbation": {"eps": 0.001, "k_p": 2},
      "outputs": {"diagnostics": "diagnostics.csv", "snapshots": "snapshots.csv",
                  "gamma": "gamma.csv", "plots": "plots", "snapshot_times": [0, 1, 2]}
    }

Omitted ``snapshot_times`` default to five equispaced times in [0, t_max].
``ic.kind`` / ``psi_t0.kind`` may be ``"file"`` with a ``path`` to a text
file of N samples (one per line, or two columns ``x psi``).
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

import numpy as np

from .analysis import PerturbationSpec
from .errors import ConfigurationError
from .grid import GridSpec, make_grid
from .integrator import STEPPERS, StepControl, default_dt
from .model import FieldPair, ModelParams

DEFAULTS = {
    "grid": {"L": 30.0, "N": 1024},
    "ic": {"kind": "gaussian", "amplitude": 1.0, "width": 1.0, "center": 0.0, "path": None},
    "psi_t0": {"kind": "zero", "path": None},
    "control": {"dt": "auto", "t_max": 2.0, "snapshot_stride": 100, "blowup_threshold": 1e6},
    "dealias": True,
    "stepper": "rk4",
    "perturbation": None,
    "outputs": {
        "diagnostics": "diagnostics.csv",
        "snapshots": "snapshots.csv",
        "gamma": "gamma.csv",
        "plots": None,
        "snapshot_times": None,
    },
}
PARAM_KEYS = ("alpha1", "alpha2", "alpha3", "sigma")
IC_KINDS = ("gaussian", "sech2", "file")
PSI_T0_KINDS = ("zero", "file")

PRESETS = {
    "focusing": {"params": {"alpha1": 1.0, "alpha2": 1.0, "alpha3": 1.0, "sigma": 2},
             "control": {"dt": 5e-4}},
    "defocusing": {"params": {"alpha1": 1.0, "alpha2": 1.0, "alpha3": -1.0, "sigma": 2},
             "control": {"dt": 5e-4}},
    "perturb-short": {"params": {"alpha1": 1.0, "alpha2": 1.0, "alpha3": 1.0, "sigma": 2},
             "ic": {"kind": "sech2"}, "control": {"dt": 5e-4},
             "perturbation": {"eps": 1e-3, "k_p": 2.0}},
    "perturb-long": {"params": {"alpha1": 1.0, "alpha2": 1.0, "alpha3": 1.0, "sigma": 2},
                 "ic": {"kind": "sech2"}, "control": {"dt": 5e-4},
                 "perturbation": {"eps": 1e-3, "k_p": 0.25}},
    "blowup": {"params": {"alpha1": -1.0, "alpha2": -1.0, "alpha3": -1.0, "sigma": 2}},
}


@dataclass(frozen=True)
class InitialData:
    kind: str = "gaussian"
    amplitude: float = 1.0
    width: float = 1.0
    center: float = 0.0
    path: str | None = None


@dataclass(frozen=True)
class VelocityData:
    kind: str = "zero"
    path: str | None = None


@dataclass(frozen=True)
class Outputs:
    diagnostics: str = "diagnostics.csv"
    snapshots: str = "snapshots.csv"
    gamma: str = "gamma.csv"
    plots: str | None = None
    snapshot_times: tuple = (0.0, 0.5, 1.0, 1.5, 2.0)


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    L: float = 30.0
    N: int = 1024
    ic: InitialData = field(default_factory=InitialData)
    psi_t0: VelocityData = field(default_factory=VelocityData)
    control: StepControl = field(default_factory=StepControl)
    dealias: bool = True
    stepper: str = "rk4"
    perturbation: PerturbationSpec | None = None
    outputs: Outputs = field(default_factory=Outputs)

    def grid_spec(self) -> GridSpec:
        return make_grid(self.L, self.N)

    def resolved_dt(self) -> float:
        if self.control.dt is not None:
            return self.control.dt
        dt = default_dt(self.params, self.grid_spec())
        return min(dt, self.control.t_max) if self.control.t_max > 0 else dt

    def initial_psi(self, grid: GridSpec) -> np.ndarray:
        ic = self.ic
        if ic.kind == "file":
            return _load_samples(ic.path, grid.N, "ic.path")
        s = (grid.x - ic.center) / ic.width
        if ic.kind == "gaussian":
            return ic.amplitude * np.exp(-s * s)
        return ic.amplitude / np.cosh(s) ** 2

    def initial_velocity(self, grid: GridSpec) -> np.ndarray:
        if self.psi_t0.kind == "file":
            return _load_samples(self.psi_t0.path, grid.N, "psi_t0.path")
        return np.zeros(grid.N)

    def initial_fields(self, grid: GridSpec | None = None) -> FieldPair:
        grid = grid or self.grid_spec()
        return FieldPair(self.initial_psi(grid), self.initial_velocity(grid))

    def to_dict(self) -> dict:
        p = self.params
        c = self.control
        return {
            "params": {"alpha1": p.alpha1, "alpha2": p.alpha2, "alpha3": p.alpha3, "sigma": p.sigma},
            "grid": {"L": self.L, "N": self.N},
            "ic": {"kind": self.ic.kind, "amplitude": self.ic.amplitude, "width": self.ic.width,
                   "center": self.ic.center, "path": self.ic.path},
            "psi_t0": {"kind": self.psi_t0.kind, "path": self.psi_t0.path},
            "control": {"dt": "auto" if c.dt is None else c.dt, "t_max": c.t_max,
                        "snapshot_stride": c.snapshot_stride, "blowup_threshold": c.blowup_threshold},
            "dealias": self.dealias,
            "stepper": self.stepper,
            "perturbation": None if self.perturbation is None else
            {"eps": self.perturbation.eps, "k_p": self.perturbation.k_p},
            "outputs": {"diagnostics": self.outputs.diagnostics, "snapshots": self.outputs.snapshots,
                        "gamma": self.outputs.gamma, "plots": self.outputs.plots,
                        "snapshot_times": list(self.outputs.snapshot_times)},
        }


def _load_samples(path, n, key):
    if not path:
        raise ConfigurationError("file kind requires a path", field=key)
    try:
        data = np.loadtxt(path, ndmin=2, comments="#", delimiter=None)
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read samples from {path}: {exc}", field=key) from exc
    samples = data[:, -1]
    if samples.shape != (n,):
        raise ConfigurationError(f"{path} holds {samples.size} samples, grid needs {n}", field=key)
    return samples


def _merge(base, override, path=""):
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigurationError(f"unknown key {where!r}", field=where)
        if isinstance(base[key], dict) and isinstance(value, dict):
            out[key] = _merge(base[key], value, where)
        elif isinstance(base[key], dict) and value is not None:
            raise ConfigurationError(f"{where} must be a mapping", field=where)
        else:
            out[key] = value
    return out


def _number(doc, path, kind=float):
    section, key = path.split(".") if "." in path else (None, path)
    value = doc[section][key] if section else doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"expected a number, got {value!r}", field=path)
    if kind is int:
        if int(value) != value:
            raise ConfigurationError(f"expected an integer, got {value!r}", field=path)
        return int(value)
    return float(value)


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except ConfigurationError as exc:
        field_name = f"{path}.{exc.field}" if exc.field else path
        raise ConfigurationError(str(exc).split(": ", 1)[-1], field=field_name) from exc


def from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigurationError("config document must be a mapping", field="<root>")
    if "params" not in doc or not isinstance(doc["params"], dict):
        raise ConfigurationError("a 'params' block is required", field="params")
    params_doc = doc["params"]
    for key in params_doc:
        if key not in PARAM_KEYS:
            raise ConfigurationError(f"unknown key 'params.{key}'", field=f"params.{key}")
    for key in PARAM_KEYS:
        if key not in params_doc:
            raise ConfigurationError(f"missing required key 'params.{key}'", field=f"params.{key}")
    rest = {k: v for k, v in doc.items() if k != "params"}
    merged = _merge(DEFAULTS, rest)
    merged["params"] = params_doc

    sigma = _number(merged, "params.sigma", int)
    if sigma < 1:
        raise ConfigurationError(f"sigma >= 1 required, got {sigma}", field="params.sigma")
    params = _wrap("params", ModelParams, _number(merged, "params.alpha1"),
                   _number(merged, "params.alpha2"), _number(merged, "params.alpha3"), sigma)
    L = _number(merged, "grid.L")
    N = _number(merged, "grid.N", int)
    _wrap("grid", GridSpec, L, N)

    ic_doc = merged["ic"]
    if ic_doc["kind"] not in IC_KINDS:
        raise ConfigurationError(f"must be one of {IC_KINDS}", field="ic.kind")
    width = _number(merged, "ic.width")
    if not width > 0:
        raise ConfigurationError("width must be positive", field="ic.width")
    ic = InitialData(ic_doc["kind"], _number(merged, "ic.amplitude"), width,
                     _number(merged, "ic.center"), ic_doc["path"])
    if ic.kind == "file" and not ic.path:
        raise ConfigurationError("file kind requires a path", field="ic.path")

    v_doc = merged["psi_t0"]
    if v_doc["kind"] not in PSI_T0_KINDS:
        raise ConfigurationError(f"must be one of {PSI_T0_KINDS}", field="psi_t0.kind")
    psi_t0 = VelocityData(v_doc["kind"], v_doc["path"])
    if psi_t0.kind == "file" and not psi_t0.path:
        raise ConfigurationError("file kind requires a path", field="psi_t0.path")

    c_doc = merged["control"]
    dt = None if c_doc["dt"] in ("auto", None) else _number(merged, "control.dt")
    control = _wrap("control", StepControl, _number(merged, "control.t_max"), dt,
                    _number(merged, "control.snapshot_stride", int),
                    _number(merged, "control.blowup_threshold"))

    if not isinstance(merged["dealias"], bool):
        raise ConfigurationError("expected true or false", field="dealias")
    if merged["stepper"] not in STEPPERS:
        raise ConfigurationError(f"must be one of {STEPPERS}", field="stepper")

    pert = None
    if merged["perturbation"] is not None:
        p_doc = merged["perturbation"]
        for key in p_doc:
            if key not in ("eps", "k_p"):
                raise ConfigurationError(f"unknown key 'perturbation.{key}'", field=f"perturbation.{key}")
        if "eps" not in p_doc or "k_p" not in p_doc:
            raise ConfigurationError("perturbation needs eps and k_p", field="perturbation")
        pert = _wrap("perturbation", PerturbationSpec, _number(merged, "perturbation.eps"),
                     _number(merged, "perturbation.k_p"))

    o_doc = merged["outputs"]
    times = o_doc["snapshot_times"]
    if times is None:
        times = [float(t) for t in np.linspace(0.0, control.t_max, 5)]
    if not isinstance(times, (list, tuple)):
        raise ConfigurationError("expected a list of times", field="outputs.snapshot_times")
    snap = []
    for t in times:
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise ConfigurationError(f"expected a number, got {t!r}", field="outputs.snapshot_times")
        if not 0 <= t <= control.t_max:
            raise ConfigurationError(f"time {t} outside [0, {control.t_max}]", field="outputs.snapshot_times")
        snap.append(float(t))
    paths = [o_doc[k] for k in ("diagnostics", "snapshots", "gamma", "plots") if o_doc[k] is not None]
    if len(set(paths)) != len(paths):
        raise ConfigurationError("output paths must be distinct", field="outputs")
    outputs = Outputs(o_doc["diagnostics"], o_doc["snapshots"], o_doc["gamma"], o_doc["plots"],
                      tuple(sorted(set(snap))))

    return RunConfig(params, L, N, ic, psi_t0, control, merged["dealias"], merged["stepper"], pert, outputs)


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON: {exc}", field="<document>") from exc
    if isinstance(doc, dict) and "config" in doc and "params" not in doc:
        doc = doc["config"]  # a run manifest
    return from_dict(doc)


def serialize_config(config: RunConfig) -> str:
    return json.dumps(config.to_dict(), indent=2, sort_keys=True)


def preset(name: str) -> dict:
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}", field="preset")
    return copy.deepcopy(PRESETS[name])
