"""Pseudospectral laboratory for psi_tt - (a1 + 3 a2 psi_x^2) psi_xx + a3 psi^sigma = 0."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigurationError,
    ContractViolation,
    DomainError,
    EvanescentBandError,
    NumericalStateError,
)
from .grid import GridSpec, make_grid  # noqa: E402
from .model import FieldPair, ModelParams  # noqa: E402
from .integrator import EvolutionState, RunResult, StepControl, rk4_step, simulate  # noqa: E402
from .analysis import PerturbationSpec  # noqa: E402

__all__ = [
    "ConfigurationError", "ContractViolation", "DomainError", "EvanescentBandError",
    "NumericalStateError", "GridSpec", "make_grid", "FieldPair", "ModelParams",
    "EvolutionState", "RunResult", "StepControl", "rk4_step", "simulate", "PerturbationSpec",
]
