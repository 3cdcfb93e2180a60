import time

import numpy as np
import pytest

from nlwave import FieldPair, ModelParams, StepControl, make_grid, simulate

ACCEPTANCE = []


def record(criterion, ok, detail):
    ACCEPTANCE.append((criterion, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")


def run_gaussian(alpha3=1.0, t_max=2.0, dt=5e-4, N=1024, L=30.0, dealias=True):
    grid = make_grid(L, N)
    params = ModelParams(1.0, 1.0, alpha3, 2)
    ic = FieldPair(np.exp(-grid.x**2), np.zeros(N))
    control = StepControl(t_max=t_max, dt=dt, snapshot_stride=100)
    return grid, params, simulate(params, grid, ic, control, dealias, snapshot_times=[0.0, t_max])


@pytest.fixture(scope="session")
def focusing_run():
    """Gaussian data, alpha = (1, 1, 1), sigma = 2, L = 30, N = 1024, dt = 5e-4, t in [0, 2].

    Returns (grid, params, result, wall-clock seconds).
    """
    start = time.perf_counter()
    grid, params, res = run_gaussian(1.0)
    return grid, params, res, time.perf_counter() - start


@pytest.fixture(scope="session")
def defocusing_run():
    return run_gaussian(-1.0)


@pytest.fixture(scope="session")
def self_convergence():
    """Max-norm psi errors at t = 0.5 for dt = 1e-2, 5e-3, 2.5e-3 against dt = 1e-4."""
    from nlwave import analysis, config

    cfg = config.from_dict({"params": {"alpha1": 1, "alpha2": 1, "alpha3": 1, "sigma": 2},
                            "control": {"t_max": 0.5}})
    return analysis.convergence_study(cfg, [1e-2, 5e-3, 2.5e-3], reference_dt=1e-4)
