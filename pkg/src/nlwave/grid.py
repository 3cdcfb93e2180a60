"""Periodic grid, discrete Fourier transforms and spectral derivatives.

Conventions
-----------
* The domain is ``[-L, L)`` sampled at ``N`` equispaced nodes.
* ``forward`` is the plain DFT sum, ``inverse`` carries the ``1/N`` factor
  (numpy's default normalisation).
* Under the ``exp(-ikx)`` forward kernel, ``d/dx`` is multiplication by
  ``+ik``. Odd-order derivatives zero the Nyquist mode so that the
  inverse transform stays real.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, ContractViolation, NumericalStateError

SYMMETRY_TOL = 1e-8


@dataclass(frozen=True)
class GridSpec:
    L: float
    N: int

    def __post_init__(self):
        if not np.isfinite(self.L) or self.L <= 0:
            raise ConfigurationError(f"L must be positive, got {self.L}", field="L")
        if int(self.N) != self.N:
            raise ConfigurationError(f"N must be an integer, got {self.N}", field="N")
        if self.N % 2:
            raise ConfigurationError(f"N must be even, got {self.N}", field="N")
        if self.N < 8:
            raise ConfigurationError(f"N must be >= 8, got {self.N}", field="N")
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "N", int(self.N))

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @cached_property
    def x(self) -> np.ndarray:
        x = -self.L + self.dx * np.arange(self.N)
        x.flags.writeable = False
        return x

    @cached_property
    def k(self) -> np.ndarray:
        k = wavenumbers(self)
        k.flags.writeable = False
        return k

    @property
    def k_max(self) -> float:
        return np.pi / self.L * (self.N // 2)


def make_grid(L: float, N: int) -> GridSpec:
    return GridSpec(L, N)


def wavenumbers(grid: GridSpec) -> np.ndarray:
    """Wavenumber ladder in DFT order; the Nyquist entry is positive."""
    N = grid.N
    j = np.arange(N)
    j = np.where(j <= N // 2, j, j - N)
    return (np.pi / grid.L) * j


def _check_length(grid, a, what):
    if a.shape != (grid.N,):
        raise ConfigurationError(f"{what} must have shape ({grid.N},), got {a.shape}", field=what)


def forward(grid: GridSpec, samples) -> np.ndarray:
    samples = np.asarray(samples, dtype=float)
    _check_length(grid, samples, "samples")
    if not np.all(np.isfinite(samples)):
        bad = int(np.flatnonzero(~np.isfinite(samples))[0])
        raise NumericalStateError(f"non-finite sample at index {bad}", index=bad)
    return np.fft.fft(samples)


def symmetry_defect(coefficients) -> float:
    """Relative departure from conjugate symmetry c(-k) = conj(c(k))."""
    c = np.asarray(coefficients)
    mirrored = np.conj(np.roll(c[::-1], 1))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(c - mirrored)) / scale)


def inverse(grid: GridSpec, coefficients, check: bool = True) -> np.ndarray:
    c = np.asarray(coefficients, dtype=complex)
    _check_length(grid, c, "coefficients")
    if check:
        defect = symmetry_defect(c)
        if defect > SYMMETRY_TOL:
            raise ContractViolation(
                f"coefficients are not conjugate-symmetric (relative defect {defect:.3e})"
            )
    return np.fft.ifft(c).real


def derivative_multiplier(grid: GridSpec, order: int) -> np.ndarray:
    if int(order) != order or order < 1:
        raise ConfigurationError(f"derivative order must be a positive integer, got {order}", field="order")
    mult = (1j * grid.k) ** int(order)
    if order % 2:
        mult[grid.N // 2] = 0.0
    return mult


def spectral_derivative(grid: GridSpec, coefficients, order: int = 1) -> np.ndarray:
    return derivative_multiplier(grid, order) * np.asarray(coefficients, dtype=complex)


def dealias_mask(grid: GridSpec) -> np.ndarray:
    """Boolean mask of retained modes under the 2/3 rule."""
    return np.abs(grid.k) <= (2.0 / 3.0) * grid.k_max


def dealias(grid: GridSpec, coefficients) -> np.ndarray:
    return np.where(dealias_mask(grid), np.asarray(coefficients, dtype=complex), 0.0)
