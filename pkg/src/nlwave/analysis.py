"""Measurements on runs: traveling-wave slopes, perturbation growth rate,
spectral resolution, conservation drift and convergence studies."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import grid as sg
from . import model
from .diagnostics import DiagnosticsSeries, l2_norm, spectrum_tail  # noqa: F401
from .errors import ConfigurationError, DomainError, NLWaveError
from .integrator import StepControl, simulate

GAMMA_FLOOR = -16.0
FISSION_FLOOR = 0.05


# ---------------------------------------------------------------------------
# traveling waves psi(x, t) = phi(x - c t) of psi_tt - (a1 + a2 psi_x^2) psi_xx = 0


@dataclass(frozen=True)
class TravelingWaveSlopes:
    c: float
    slopes: tuple
    radicand: float | None
    note: str

    @property
    def extended_schwartz(self) -> bool:
        """Nonzero slopes give linear ramps: derivatives decay, the field does not."""
        return any(s != 0.0 for s in self.slopes)


def traveling_wave_slopes(params: model.ModelParams, c: float) -> TravelingWaveSlopes:
    """Admissible constant slopes phi' of a traveling wave with speed c.

    Integrating once with decaying data gives
    ``(c^2 - a1) phi' - (a2 / 3) phi'^3 = 0``.
    """
    gap = c * c - params.alpha1
    if params.alpha2 == 0.0:
        return TravelingWaveSlopes(c, (0.0,), None, "degenerate: alpha2 = 0 leaves only the zero slope")
    radicand = 3.0 * gap / params.alpha2
    if radicand > 0:
        s = math.sqrt(radicand)
        return TravelingWaveSlopes(
            c, (0.0, s, -s), radicand,
            "nonzero slopes are linear ramps in the extended Schwartz class (not S(R))",
        )
    if radicand == 0:
        return TravelingWaveSlopes(c, (0.0,), radicand, "triple root at zero slope (c^2 = alpha1)")
    return TravelingWaveSlopes(c, (0.0,), radicand, "negative radicand: only the zero slope")


# ---------------------------------------------------------------------------
# perturbation experiment


@dataclass(frozen=True)
class PerturbationSpec:
    eps: float
    k_p: float

    def __post_init__(self):
        if not (np.isfinite(self.eps) and self.eps > 0):
            raise ConfigurationError(f"eps must be positive, got {self.eps}", field="eps")
        if not np.isfinite(self.k_p):
            raise ConfigurationError(f"k_p must be finite, got {self.k_p}", field="k_p")

    def snapped_kp(self, grid: sg.GridSpec) -> float:
        return snap_wavenumber(grid, self.k_p)


def snap_wavenumber(grid: sg.GridSpec, k: float) -> float:
    """Nearest entry of the grid's wavenumber ladder (sign preserved)."""
    step = math.pi / grid.L
    j = min(round(abs(k) / step), grid.N // 2)
    return math.copysign(j * step, k) if j else 0.0


def perturbed_ic(psi0, grid: sg.GridSpec, spec: PerturbationSpec) -> np.ndarray:
    return np.asarray(psi0, dtype=float) + spec.eps * np.cos(spec.snapped_kp(grid) * grid.x)


def growth_rate(psi_pert, psi, grid: sg.GridSpec) -> float:
    """log10 of the relative L2 distance between two fields, floored at -16."""
    ref = l2_norm(grid, psi)
    if not ref > 0:
        raise DomainError("growth rate is undefined for a zero reference field")
    diff = l2_norm(grid, np.asarray(psi_pert) - np.asarray(psi))
    if diff == 0:
        return GAMMA_FLOOR
    return max(GAMMA_FLOOR, math.log10(diff / ref))


@dataclass
class PerturbationResult:
    times: np.ndarray
    gamma: np.ndarray
    k_p: float
    base: object
    perturbed: object

    @property
    def bounded_excess(self) -> float:
        """max gamma(t) - gamma(0)."""
        return float(np.max(self.gamma) - self.gamma[0])


def run_perturbation(params, grid, psi0, psi_t0, spec: PerturbationSpec, control: StepControl,
                     dealias_on=True, n_samples=41, stepper="rk4") -> PerturbationResult:
    """Evolve base and perturbed data side by side and sample gamma(t)."""
    times = np.linspace(0.0, control.t_max, n_samples) if control.t_max > 0 else np.array([0.0])
    times = [float(t) for t in times]
    base = simulate(params, grid, model.FieldPair(psi0, psi_t0), control, dealias_on, times, stepper)
    pert = simulate(params, grid, model.FieldPair(perturbed_ic(psi0, grid, spec), psi_t0), control,
                    dealias_on, times, stepper)
    n = min(len(base.snapshots), len(pert.snapshots))
    ts = np.array([base.snapshots[i][0] for i in range(n)])
    gamma = np.array([growth_rate(pert.snapshots[i][1], base.snapshots[i][1], grid) for i in range(n)])
    return PerturbationResult(ts, gamma, spec.snapped_kp(grid), base, pert)


# ---------------------------------------------------------------------------
# conservation and shape diagnostics


def conservation_drift(series: DiagnosticsSeries, quantity: str) -> float:
    if quantity not in ("mass", "energy"):
        raise ConfigurationError(f"quantity must be 'mass' or 'energy', got {quantity!r}", field="quantity")
    if len(series) < 2:
        raise ConfigurationError("conservation drift needs at least two rows", field="series")
    q = series.column(quantity)
    return float(np.max(np.abs(q - q[0])) / max(1.0, abs(q[0])))


def local_maxima(grid: sg.GridSpec, psi, floor=FISSION_FLOOR):
    """(x, value) pairs of strict periodic local maxima at or above ``floor``."""
    psi = np.asarray(psi)
    left, right = np.roll(psi, 1), np.roll(psi, -1)
    idx = np.flatnonzero((psi > left) & (psi > right) & (psi >= floor))
    return [(float(grid.x[i]), float(psi[i])) for i in idx]


def mirror_error(psi) -> float:
    """max |psi(x) - psi(-x)| using the grid mirror x_j <-> x_{N-j}."""
    psi = np.asarray(psi)
    return float(np.max(np.abs(psi - np.roll(psi[::-1], 1))))


def standing_wave(grid: sg.GridSpec, t: float, k: float, alpha1: float, amplitude=1.0):
    """Exact linear solution cos(k x) cos(sqrt(alpha1) k t) for psi_t(0) = 0."""
    return amplitude * np.cos(k * grid.x) * np.cos(math.sqrt(alpha1) * k * t)


# ---------------------------------------------------------------------------
# convergence


class StudyAborted(NLWaveError):
    def __init__(self, level, blowup):
        self.level = level
        self.blowup = blowup
        super().__init__(f"blow-up at t={blowup.t_blow:.6g} ({blowup.trigger}) during level {level}")


@dataclass
class ConvergenceReport:
    dt_levels: list
    errors: list
    temporal_order: float
    reference: str
    pairwise_orders: list = field(default_factory=list)
    spatial: list = field(default_factory=list)

    def as_dict(self):
        return {
            "dt_levels": list(self.dt_levels),
            "errors": list(self.errors),
            "temporal_order": self.temporal_order,
            "pairwise_orders": list(self.pairwise_orders),
            "reference": self.reference,
            "spatial": [{"N": n, "spectrum_tail": tail} for n, tail in self.spatial],
        }


def fit_order(dts, errors) -> float:
    slope, _ = np.polyfit(np.log(dts), np.log(errors), 1)
    return float(slope)


def convergence_study(config, dt_levels, n_levels=(), reference_dt=None, exact=None,
                      stepper=None) -> ConvergenceReport:
    """Temporal order from a dt sweep and a spectrum-tail table over N.

    Errors are max-norm differences in psi at ``t_max``, measured against
    ``exact(grid, t)`` when given, otherwise against a run at
    ``reference_dt`` (default: finest level / 10).
    """
    dt_levels = sorted((float(d) for d in dt_levels), reverse=True)
    if len(dt_levels) < 3:
        raise ConfigurationError("at least three dt levels are needed", field="dt_levels")
    params, grid = config.params, config.grid_spec()
    ic = config.initial_fields(grid)
    stepper = stepper or config.stepper
    t_max = config.control.t_max

    def run(g, fields, dt):
        control = StepControl(t_max=t_max, dt=dt, snapshot_stride=10**9,
                              blowup_threshold=config.control.blowup_threshold)
        res = simulate(params, g, fields, control, config.dealias, stepper=stepper)
        if res.blowup is not None:
            raise StudyAborted({"N": g.N, "dt": dt}, res.blowup)
        return res.state.fields().psi

    if exact is not None:
        ref = exact(grid, t_max)
        reference = "exact"
    else:
        ref_dt = reference_dt or dt_levels[-1] / 10.0
        ref = run(grid, ic, ref_dt)
        reference = f"dt={ref_dt:.6g}"

    errors = [float(np.max(np.abs(run(grid, ic, dt) - ref))) for dt in dt_levels]
    pairwise = [
        math.log(errors[i] / errors[i + 1]) / math.log(dt_levels[i] / dt_levels[i + 1])
        for i in range(len(errors) - 1)
    ]
    spatial = []
    for n in n_levels:
        g = sg.make_grid(grid.L, n)
        spatial.append((int(n), spectrum_tail(g, run(g, config.initial_fields(g), dt_levels[-1]))))
    return ConvergenceReport(dt_levels, errors, fit_order(dt_levels, errors), reference, pairwise, spatial)
