"""Per-snapshot diagnostic rows recorded during a run."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import grid as sg
from . import model
from .errors import ConfigurationError, DomainError

COLUMNS = ("t", "mass", "momentum", "energy", "energy_eq4", "max_abs", "l2_norm", "spectrum_tail")
TAIL_FRACTION = 0.1


class DiagnosticsRow(NamedTuple):
    t: float
    mass: float
    momentum: float
    energy: float
    energy_eq4: float
    max_abs: float
    l2_norm: float
    spectrum_tail: float


@dataclass
class DiagnosticsSeries:
    rows: list = field(default_factory=list)

    def append(self, row: DiagnosticsRow):
        if self.rows and not row.t > self.rows[-1].t:
            raise ConfigurationError(
                f"diagnostic times must increase strictly ({row.t} after {self.rows[-1].t})", field="t"
            )
        self.rows.append(DiagnosticsRow(*(float(v) for v in row)))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, name: str) -> np.ndarray:
        if name not in COLUMNS:
            raise KeyError(name)
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    @property
    def t(self) -> np.ndarray:
        return self.column("t")


def tail_modes(grid: sg.GridSpec) -> np.ndarray:
    """Mask of the top 10% of the |k| range."""
    return np.abs(grid.k) >= (1.0 - TAIL_FRACTION) * grid.k_max


def spectrum_tail_hat(grid: sg.GridSpec, psi_hat) -> float:
    amp = np.abs(psi_hat)
    peak = amp.max()
    if not peak > 0:
        raise DomainError("spectrum tail is undefined for a zero field")
    return float(amp[tail_modes(grid)].max() / peak)


def spectrum_tail(grid: sg.GridSpec, psi) -> float:
    return spectrum_tail_hat(grid, sg.forward(grid, psi))


def l2_norm(grid: sg.GridSpec, psi) -> float:
    return float(np.sqrt(np.sum(np.asarray(psi) ** 2) * grid.dx))


def diagnostics_row(params, grid, t, psi_hat, v_hat) -> DiagnosticsRow:
    psi = np.fft.ifft(psi_hat).real
    psi_t = np.fft.ifft(v_hat).real
    state = model.FieldPair(psi, psi_t)
    amp = np.abs(psi_hat)
    tail = spectrum_tail_hat(grid, psi_hat) if amp.max() > 0 else 0.0
    return DiagnosticsRow(
        t=t,
        mass=model.mass(grid, psi),
        momentum=model.momentum(grid, psi_t),
        energy=model.energy(params, grid, state),
        energy_eq4=model.energy_eq4(params, grid, state),
        max_abs=float(np.max(np.abs(psi))),
        l2_norm=l2_norm(grid, psi),
        spectrum_tail=tail,
    )


def blowup_row(params, grid, t, psi_hat, v_hat) -> DiagnosticsRow:
    """Terminal row of a run stopped by blow-up; entries that cannot be
    evaluated are NaN."""
    with np.errstate(all="ignore"):
        try:
            return diagnostics_row(params, grid, t, psi_hat, v_hat)
        except (ArithmeticError, ValueError):
            pass
        psi = np.fft.ifft(psi_hat).real
        peak = float(np.max(np.abs(psi)))
    nan = float("nan")
    return DiagnosticsRow(t, nan, nan, nan, nan, peak, nan, nan)
