# Fourth-order convergence in time, for the linear standing wave (exact
# reference) and the nonlinear Gaussian run (self-convergence), plus the
# first-order behaviour of the four-stage variant with half-weighted last stage.
import math
import tempfile

import numpy as np

from nlwave import analysis, config
from nlwave import grid as sg

g = sg.make_grid(math.pi, 32)
path = tempfile.NamedTemporaryFile(suffix=".txt", delete=False).name
np.savetxt(path, np.cos(g.x))
linear = config.from_dict({"params": {"alpha1": 1, "alpha2": 0, "alpha3": 0, "sigma": 2},
                           "grid": {"L": math.pi, "N": 32}, "control": {"t_max": 1.0},
                           "ic": {"kind": "file", "path": path}})


def exact(grid, t):
    return analysis.standing_wave(grid, t, 1.0, 1.0)


for stepper in ("rk4", "half-weight"):
    r = analysis.convergence_study(linear, [0.2, 0.1, 0.05, 0.025], exact=exact, stepper=stepper)
    print(f"linear, {stepper:11s}: order {r.temporal_order:.3f}  errors {['%.1e' % e for e in r.errors]}")

nonlinear = config.from_dict({"params": {"alpha1": 1, "alpha2": 1, "alpha3": 1, "sigma": 2},
                              "control": {"t_max": 0.5}})
r = analysis.convergence_study(nonlinear, [1e-2, 5e-3, 2.5e-3], n_levels=[128, 256, 512], reference_dt=1e-4)
print(f"nonlinear self-convergence order {r.temporal_order:.3f} (pairwise {np.round(r.pairwise_orders, 3)})")
for n, tail in r.spatial:
    print(f"  N={n:4d}: spectrum tail {tail:.2e}")
