"""Second-order-in-time evolution as a first-order system in Fourier space.

    d(psi_hat)/dt = v_hat
    d(v_hat)/dt   = F[acceleration(psi)]

advanced with classical RK4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import grid as sg
from . import model
from .diagnostics import DiagnosticsSeries, blowup_row, diagnostics_row
from .errors import ConfigurationError, NumericalStateError

OVERFLOW = "overflow"
NON_FINITE = "non-finite"
STEPPERS = ("rk4", "half-weight")


@dataclass(frozen=True)
class EvolutionState:
    t: float
    psi_hat: np.ndarray
    v_hat: np.ndarray

    @classmethod
    def from_fields(cls, grid, psi, psi_t, t=0.0):
        return cls(float(t), sg.forward(grid, psi), sg.forward(grid, psi_t))

    def fields(self, grid=None) -> model.FieldPair:
        return model.FieldPair(np.fft.ifft(self.psi_hat).real, np.fft.ifft(self.v_hat).real)


@dataclass(frozen=True)
class StepControl:
    t_max: float = 2.0
    dt: float | None = None
    snapshot_stride: int = 100
    blowup_threshold: float = 1e6

    def __post_init__(self):
        if not (np.isfinite(self.t_max) and self.t_max >= 0):
            raise ConfigurationError(f"t_max must be non-negative, got {self.t_max}", field="t_max")
        if self.dt is not None:
            if not (np.isfinite(self.dt) and self.dt > 0):
                raise ConfigurationError(f"dt must be positive, got {self.dt}", field="dt")
            if self.t_max > 0 and self.dt > self.t_max:
                raise ConfigurationError(f"dt={self.dt} exceeds t_max={self.t_max}", field="dt")
        if int(self.snapshot_stride) != self.snapshot_stride or self.snapshot_stride < 1:
            raise ConfigurationError("snapshot_stride must be a positive integer", field="snapshot_stride")
        if not self.blowup_threshold > 0:
            raise ConfigurationError("blowup_threshold must be positive", field="blowup_threshold")


@dataclass(frozen=True)
class BlowupRecord:
    t_blow: float
    trigger: str
    max_abs: float


@dataclass
class RunResult:
    state: EvolutionState
    diagnostics: DiagnosticsSeries
    snapshots: list = field(default_factory=list)
    blowup: BlowupRecord | None = None
    dt: float = 0.0
    steps: int = 0

    def snapshot(self, t):
        for ts, psi in self.snapshots:
            if ts == t:
                return psi
        raise KeyError(t)


def omega_cap(params: model.ModelParams, grid: sg.GridSpec) -> float:
    km = grid.k_max
    return math.sqrt(abs(params.alpha1) * km**2 + 3.0 * abs(params.alpha2) * km**4)


def default_dt(params: model.ModelParams, grid: sg.GridSpec) -> float:
    cap = omega_cap(params, grid)
    if cap == 0.0:
        cap = grid.k_max
    return 0.25 / cap


def rhs(params, grid, state: EvolutionState, dealias_on=True):
    return state.v_hat, model.acceleration_hat(params, grid, state.psi_hat, dealias_on)


def rk4_step(params, grid, state: EvolutionState, dt: float, dealias_on=True) -> EvolutionState:
    if not dt > 0:
        raise ConfigurationError(f"dt must be positive, got {dt}", field="dt")
    acc = model.acceleration_hat
    p, v = state.psi_hat, state.v_hat
    k1, l1 = v, acc(params, grid, p, dealias_on)
    k2, l2 = v + 0.5 * dt * l1, acc(params, grid, p + 0.5 * dt * k1, dealias_on)
    k3, l3 = v + 0.5 * dt * l2, acc(params, grid, p + 0.5 * dt * k2, dealias_on)
    k4, l4 = v + dt * l3, acc(params, grid, p + dt * k3, dealias_on)
    return EvolutionState(
        state.t + dt,
        p + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4),
        v + dt / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4),
    )


def half_weight_rk4_step(params, grid, state: EvolutionState, dt: float, dealias_on=True) -> EvolutionState:
    """Four-stage variant with a half-weighted last stage.

    The last stage uses half increments (``V + l3/2``, ``psi + k3/2``) instead
    of full ones, so this is not classical RK4 and loses fourth-order
    accuracy. Provided for comparison only.
    """
    if not dt > 0:
        raise ConfigurationError(f"dt must be positive, got {dt}", field="dt")
    acc = model.acceleration_hat
    p, v = state.psi_hat, state.v_hat
    k1 = dt * v
    l1 = dt * acc(params, grid, p, dealias_on)
    k2 = dt * (v + 0.5 * l1)
    l2 = dt * acc(params, grid, p + 0.5 * k1, dealias_on)
    k3 = dt * (v + 0.5 * l2)
    l3 = dt * acc(params, grid, p + 0.5 * k2, dealias_on)
    k4 = dt * (v + 0.5 * l3)
    l4 = dt * acc(params, grid, p + 0.5 * k3, dealias_on)
    return EvolutionState(
        state.t + dt,
        p + (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0,
        v + (l1 + 2.0 * l2 + 2.0 * l3 + l4) / 6.0,
    )


_STEP_FUNCS = {"rk4": rk4_step, "half-weight": half_weight_rk4_step}


def detect_blowup(state: EvolutionState, grid: sg.GridSpec, threshold: float):
    """Return ``"non-finite"``, ``"overflow"`` or None."""
    with np.errstate(all="ignore"):
        if not (np.all(np.isfinite(state.psi_hat)) and np.all(np.isfinite(state.v_hat))):
            return NON_FINITE
        psi = np.fft.ifft(state.psi_hat).real
        if not np.all(np.isfinite(psi)):
            return NON_FINITE
        if np.max(np.abs(psi)) > threshold:
            return OVERFLOW
    return None


def _event_times(t_max, snapshot_times):
    times = sorted(set(float(t) for t in snapshot_times) | {float(t_max)})
    for t in times:
        if t < 0 or t > t_max:
            raise ConfigurationError(f"snapshot time {t} outside [0, {t_max}]", field="snapshot_times")
    return [t for t in times if t > 0]


def simulate(params, grid, ic: model.FieldPair, control: StepControl, dealias_on=True,
             snapshot_times=(), stepper="rk4") -> RunResult:
    """Integrate from t=0 to ``control.t_max``.

    Steps are shortened to land exactly on each requested snapshot time and on
    ``t_max``. Blow-up ends the run early and is reported in the result, not
    raised.
    """
    if stepper not in _STEP_FUNCS:
        raise ConfigurationError(f"unknown stepper {stepper!r}", field="stepper")
    step = _STEP_FUNCS[stepper]
    psi0 = np.asarray(ic.psi, dtype=float)
    psi_t0 = np.asarray(ic.psi_t, dtype=float)
    state = EvolutionState.from_fields(grid, psi0, psi_t0)
    dt = control.dt if control.dt is not None else default_dt(params, grid)
    if control.t_max > 0:
        dt = min(dt, control.t_max)

    wanted = sorted(set(float(t) for t in snapshot_times))
    events = _event_times(control.t_max, wanted)
    series = DiagnosticsSeries()
    series.append(diagnostics_row(params, grid, 0.0, state.psi_hat, state.v_hat))
    snapshots = [(0.0, psi0.copy())] if 0.0 in wanted else []
    result = RunResult(state, series, snapshots, dt=dt)
    if control.t_max == 0:
        return result

    land_tol = 1e-9 * dt
    n = 0
    for target in events:
        while state.t < target:
            h = dt
            if state.t + h >= target - land_tol:
                h = target - state.t
            try:
                with np.errstate(over="ignore", invalid="ignore"):
                    new = step(params, grid, state, h, dealias_on)
                trigger = detect_blowup(new, grid, control.blowup_threshold)
            except NumericalStateError:
                new = replace(state, t=state.t + h)
                trigger = NON_FINITE
            n += 1
            if state.t + h >= target - land_tol:
                new = replace(new, t=target)
            state = new
            if trigger is not None:
                row = blowup_row(params, grid, state.t, state.psi_hat, state.v_hat)
                series.append(row)
                result.blowup = BlowupRecord(state.t, trigger, row.max_abs)
                result.state, result.steps = state, n
                return result
            if n % control.snapshot_stride == 0 or state.t == control.t_max:
                series.append(diagnostics_row(params, grid, state.t, state.psi_hat, state.v_hat))
        if target in wanted:
            snapshots.append((target, np.fft.ifft(state.psi_hat).real))

    result.state, result.steps = state, n
    return result
