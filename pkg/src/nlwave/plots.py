"""Standalone SVG figures. Output is byte-identical for identical inputs."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import ConfigurationError  # noqa: E402

KINDS = ("heatmap", "lines", "spectrum", "gamma", "dispersion")
LOG_FLOOR = 1e-20

_RC = {
    "svg.hashsalt": "nlwave",
    "svg.fonttype": "none",
    "path.simplify": False,
    "figure.figsize": (6.4, 4.2),
}


def _require(inputs, *keys):
    for key in keys:
        if key not in inputs:
            raise ConfigurationError(f"missing plot input {key!r}", field=key)
        value = inputs[key]
        if value is None:
            raise ConfigurationError(f"plot input {key!r} is empty", field=key)
        empty = len(value) == 0 if isinstance(value, (list, tuple)) else np.size(value) == 0
        if empty:
            raise ConfigurationError(f"plot input {key!r} is empty", field=key)


def _heatmap(ax, inputs):
    _require(inputs, "x", "times", "fields")
    x, t = np.asarray(inputs["x"]), np.asarray(inputs["times"])
    f = np.asarray(inputs["fields"])
    im = ax.imshow(f, aspect="auto", origin="lower", interpolation="nearest",
                   extent=(x[0], x[-1], t[0], t[-1]), cmap="viridis")
    ax.figure.colorbar(im, ax=ax, label="psi")
    ax.set_xlabel("x")
    ax.set_ylabel("t")


def _lines(ax, inputs):
    _require(inputs, "x", "snapshots")
    x = np.asarray(inputs["x"])
    for t, psi in inputs["snapshots"]:
        ax.plot(x, psi, lw=1, label=f"t={t:g}")
    if "xlim" in inputs:
        ax.set_xlim(*inputs["xlim"])
    ax.set_xlabel("x")
    ax.set_ylabel("psi")
    ax.legend(fontsize=8)


def _spectrum(ax, inputs):
    _require(inputs, "k", "series")
    k = np.asarray(inputs["k"])
    order = np.argsort(k)
    for label, amp in inputs["series"]:
        amp = np.maximum(np.asarray(amp, dtype=float), LOG_FLOOR)
        ax.semilogy(k[order], amp[order], lw=1, label=label)
    ax.set_xlabel("k")
    ax.set_ylabel("|psi_hat| / max")
    ax.legend(fontsize=8)


def _gamma(ax, inputs):
    _require(inputs, "t", "gamma")
    ratio = 10.0 ** np.asarray(inputs["gamma"], dtype=float)
    ax.semilogy(inputs["t"], ratio, lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("||psi_pert - psi|| / ||psi||")


def _dispersion(ax, inputs):
    _require(inputs, "k", "omega_squared")
    k = np.asarray(inputs["k"])
    w2 = np.asarray(inputs["omega_squared"])
    omega = np.where(w2 >= 0, np.sqrt(np.abs(w2)), np.nan)
    ax.plot(k, omega, lw=1.2, label="omega (dispersive nonlinearity)")
    if "kdv_omega" in inputs:
        ax.plot(k, inputs["kdv_omega"], "--", lw=1.2, label="omega (KdV)")
    ax.set_xlabel("k")
    ax.set_ylabel("omega")
    ax.legend(fontsize=8)


_DRAW = {"heatmap": _heatmap, "lines": _lines, "spectrum": _spectrum, "gamma": _gamma,
         "dispersion": _dispersion}


def render_plot(kind: str, inputs: dict, path, title=None):
    if kind not in _DRAW:
        raise ConfigurationError(f"unknown plot kind {kind!r}; choose from {KINDS}", field="kind")
    if not inputs:
        raise ConfigurationError("plot inputs are empty", field="inputs")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        try:
            _DRAW[kind](ax, inputs)
            if title:
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return path
