# A Gaussian hump splits into two counter-propagating packets, both with an
# attracting (alpha3 = +1) and a repulsive (alpha3 = -1) power term.
import numpy as np

from nlwave import FieldPair, ModelParams, StepControl, analysis, make_grid, simulate
from nlwave.plots import render_plot

grid = make_grid(30.0, 1024)
ic = FieldPair(np.exp(-grid.x**2), np.zeros(grid.N))
control = StepControl(t_max=2.0, dt=5e-4, snapshot_stride=200)
times = np.linspace(0.0, 2.0, 41)

for alpha3 in (1.0, -1.0):
    params = ModelParams(1.0, 1.0, alpha3, 2)
    res = simulate(params, grid, ic, control, snapshot_times=times)
    psi = res.snapshot(2.0)
    peaks = analysis.local_maxima(grid, psi)
    print(f"alpha3={alpha3:+g}: maxima at t=2 ->",
          ", ".join(f"x={x:+.3f} (h={h:.3f})" for x, h in peaks),
          f"| mirror error {analysis.mirror_error(psi):.1e}")

    tag = "attracting" if alpha3 > 0 else "repulsive"
    render_plot("heatmap", {"x": grid.x, "times": times, "fields": np.array([p for _, p in res.snapshots])},
                f"demo-out/fission_{tag}.svg")
    render_plot("lines", {"x": grid.x, "snapshots": res.snapshots[::10], "xlim": (-8, 8)},
                f"demo-out/fission_{tag}_lines.svg")
