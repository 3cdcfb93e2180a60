# Small-amplitude dispersion relation of
#     psi_tt - (a1 + 3 a2 psi_x^2) psi_xx + a3 psi^sigma = 0
# compared with the KdV curve omega = alpha k - beta k^3.
import numpy as np

from nlwave import model
from nlwave.plots import render_plot

params = model.ModelParams(alpha1=1.0, alpha2=1.0, alpha3=1.0, sigma=2)

# omega^2 = a1 k^2 - 3 a2 k^4 is positive only below the band edge
edge = model.band_edge(params)
print(f"band edge |k| = {edge:.7f}")

k = np.linspace(0.0, 0.57, 58)
w2 = model.omega_squared(params, k)
print(f"omega^2 on [0, 0.57]: min {w2[1:].min():.3e} (stays real)")

# group and phase velocity differ: the medium is dispersive
for kk in (0.1, 0.3, 0.5):
    print(f"k={kk:.1f}  v_g={model.group_velocity(params, kk):+.4f}  v_p={model.phase_velocity(params, kk):+.4f}")

try:
    model.group_velocity(params, 1.0)
except model.EvanescentBandError as exc:
    print("k=1.0:", exc)

render_plot("dispersion", {"k": k, "omega_squared": w2, "kdv_omega": model.kdv_omega(1.0, 1.0, k)},
            "demo-out/dispersion.svg")
print("wrote demo-out/dispersion.svg")
