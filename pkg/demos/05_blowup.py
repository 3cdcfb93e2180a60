# With all coefficients negative the equation is ill-posed (backward-wave
# type): short-wavelength content grows and the run stops with a blow-up
# record instead of an exception.
import numpy as np

from nlwave import FieldPair, ModelParams, StepControl, make_grid, simulate
from nlwave.integrator import default_dt

for n in (256, 512, 1024):
    g = make_grid(30.0, n)
    params = ModelParams(-1.0, -1.0, -1.0, 2)
    res = simulate(params, g, FieldPair(np.exp(-g.x**2), np.zeros(n)), StepControl(t_max=2.0))
    b = res.blowup
    print(f"N={n:5d} dt={default_dt(params, g):.2e}: blow-up at t={b.t_blow:.4f} ({b.trigger}), "
          f"max|psi| before stop {res.diagnostics.column('max_abs')[-2]:.3g}")
