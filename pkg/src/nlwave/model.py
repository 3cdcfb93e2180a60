"""Physics of  psi_tt - (a1 + 3 a2 psi_x^2) psi_xx + a3 psi^sigma = 0.

The acceleration is evaluated pseudospectrally. The dispersive-nonlinear
term ``3 a2 psi_x^2 psi_xx`` is formed as ``d/dx (a2 psi_x^3)``: the two are
identical for smooth fields, but the flux form keeps the semi-discrete
energy exactly conserved because the spectral ``d/dx`` is skew-adjoint.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import grid as sg
from .errors import ConfigurationError, DomainError, EvanescentBandError, NumericalStateError


@dataclass(frozen=True)
class ModelParams:
    alpha1: float
    alpha2: float
    alpha3: float
    sigma: int = 2

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ConfigurationError(f"{name} must be finite, got {value}", field=name)
            object.__setattr__(self, name, float(value))
        if int(self.sigma) != self.sigma or self.sigma < 1:
            raise ConfigurationError(f"sigma >= 1 required (integer), got {self.sigma}", field="sigma")
        object.__setattr__(self, "sigma", int(self.sigma))

    @property
    def exploratory(self) -> bool:
        """True for sigma = 1, outside the sigma >= 2 regime of interest."""
        return self.sigma < 2


class FieldPair(NamedTuple):
    psi: np.ndarray
    psi_t: np.ndarray


def _first_bad(a):
    bad = np.flatnonzero(~np.isfinite(a))
    return int(bad[0]) if bad.size else None


def _require_finite(a, what):
    idx = _first_bad(a)
    if idx is not None:
        raise NumericalStateError(f"non-finite {what} at index {idx}", index=idx)


def acceleration_hat(params: ModelParams, grid: sg.GridSpec, psi_hat, dealias_on=True, conservative=True):
    """Transform of the acceleration, given the transform of psi.

    With ``conservative=False`` the dispersive product is formed literally as
    ``3 a2 psi_x^2 psi_xx``; kept for comparison only.
    """
    k2 = grid.k**2
    with np.errstate(over="ignore", invalid="ignore"):
        out = -params.alpha1 * k2 * psi_hat
        mask = sg.dealias_mask(grid) if dealias_on else None

        if params.alpha2 != 0.0:
            psi_x = np.fft.ifft(sg.derivative_multiplier(grid, 1) * psi_hat).real
            if conservative:
                prod = params.alpha2 * psi_x**3
                _require_finite(prod, "dispersive product")
                prod_hat = sg.derivative_multiplier(grid, 1) * np.fft.fft(prod)
            else:
                psi_xx = np.fft.ifft(-k2 * psi_hat).real
                prod = 3.0 * params.alpha2 * psi_x**2 * psi_xx
                _require_finite(prod, "dispersive product")
                prod_hat = np.fft.fft(prod)
            if mask is not None:
                prod_hat = np.where(mask, prod_hat, 0.0)
            out = out + prod_hat

        if params.alpha3 != 0.0:
            psi = np.fft.ifft(psi_hat).real
            power = params.alpha3 * psi**params.sigma
            _require_finite(power, "power product")
            power_hat = np.fft.fft(power)
            if mask is not None:
                power_hat = np.where(mask, power_hat, 0.0)
            out = out - power_hat

    _require_finite(out, "acceleration coefficient")
    return out


def acceleration(params: ModelParams, grid: sg.GridSpec, psi, dealias_on=True, conservative=True):
    """(a1 + 3 a2 psi_x^2) psi_xx - a3 psi^sigma at the grid nodes."""
    psi_hat = sg.forward(grid, psi)
    return np.fft.ifft(acceleration_hat(params, grid, psi_hat, dealias_on, conservative)).real


def hamiltonian_density(params: ModelParams, psi, psi_x, psi_t):
    psi, psi_x, psi_t = (np.asarray(a, dtype=float) for a in (psi, psi_x, psi_t))
    s = params.sigma
    return 0.5 * (
        psi_t**2
        + (params.alpha1 + 0.5 * params.alpha2 * psi_x**2) * psi_x**2
        + 2.0 * params.alpha3 / (s + 1) * psi ** (s + 1)
    )


def _gradient(grid, psi):
    return np.fft.ifft(sg.derivative_multiplier(grid, 1) * sg.forward(grid, psi)).real


def energy(params: ModelParams, grid: sg.GridSpec, state: FieldPair) -> float:
    psi = np.asarray(state.psi, dtype=float)
    psi_t = np.asarray(state.psi_t, dtype=float)
    _require_finite(psi_t, "psi_t")
    dens = hamiltonian_density(params, psi, _gradient(grid, psi), psi_t)
    return float(np.sum(dens) * grid.dx)


def energy_eq4(params: ModelParams, grid: sg.GridSpec, state: FieldPair) -> float:
    """Energy with the gradient term entering with a minus sign.

    This variant is not conserved by the flow; it is tracked only so the
    sign discrepancy between the two published energy forms stays visible.
    """
    psi = np.asarray(state.psi, dtype=float)
    psi_t = np.asarray(state.psi_t, dtype=float)
    psi_x = _gradient(grid, psi)
    s = params.sigma
    dens = 0.5 * (
        psi_t**2
        - (params.alpha1 + 0.5 * params.alpha2 * psi_x**2) * psi_x**2
        + 2.0 * params.alpha3 / (s + 1) * psi ** (s + 1)
    )
    return float(np.sum(dens) * grid.dx)


def mass(grid: sg.GridSpec, psi) -> float:
    return float(np.sum(psi) * grid.dx)


def momentum(grid: sg.GridSpec, psi_t) -> float:
    return float(np.sum(psi_t) * grid.dx)


# ---------------------------------------------------------------------------
# small-amplitude dispersion relation


def omega_squared(params: ModelParams, k):
    k = np.asarray(k, dtype=float)
    k2 = k * k
    res = params.alpha1 * k2 - 3.0 * params.alpha2 * k2 * k2
    return float(res) if res.ndim == 0 else res


def band_edge(params: ModelParams):
    """|k| where omega^2 changes sign, or None if it never does for k != 0."""
    if params.alpha1 > 0 and params.alpha2 > 0:
        return float(np.sqrt(params.alpha1 / (3.0 * params.alpha2)))
    return None


def group_velocity(params: ModelParams, k: float) -> float:
    """Positive branch of d(omega)/dk."""
    w2 = omega_squared(params, k)
    if not w2 > 0:
        raise EvanescentBandError(k, band_edge(params))
    return (params.alpha1 * k - 6.0 * params.alpha2 * k**3) / np.sqrt(w2)


def phase_velocity(params: ModelParams, k: float) -> float:
    if k == 0:
        raise DomainError("phase velocity is undefined at k = 0")
    w2 = omega_squared(params, k)
    if not w2 > 0:
        raise EvanescentBandError(k, band_edge(params))
    return np.sqrt(w2) / k


def kdv_omega(alpha, beta, k):
    """KdV comparison curve omega = alpha k - beta k^3."""
    return alpha * k - beta * k**3
