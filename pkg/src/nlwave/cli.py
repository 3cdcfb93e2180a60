"""Command-line entry point: ``nlwave <subcommand> [options]``.

Exit status: 0 success, 2 configuration error, 3 blow-up (outputs and the
manifest are still written).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, analysis, config as cfgmod, io, model, plots
from .errors import ConfigurationError
from .integrator import omega_cap, simulate

EXIT_OK, EXIT_CONFIG, EXIT_BLOWUP = 0, 2, 3

OVERRIDES = {
    "alpha1": ("params", "alpha1"), "alpha2": ("params", "alpha2"), "alpha3": ("params", "alpha3"),
    "sigma": ("params", "sigma"), "L": ("grid", "L"), "N": ("grid", "N"),
    "dt": ("control", "dt"), "tmax": ("control", "t_max"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigurationError(message, field="argv")


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser():
    parser = _Parser(prog="nlwave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="JSON config or a run manifest")
        p.add_argument("--preset", choices=sorted(cfgmod.PRESETS))
        p.add_argument("--out", default="nlwave-out", help="output directory")
        p.add_argument("--alpha1", type=float)
        p.add_argument("--alpha2", type=float)
        p.add_argument("--alpha3", type=float)
        p.add_argument("--sigma", type=int)
        p.add_argument("--L", type=float)
        p.add_argument("--N", type=int)
        p.add_argument("--dt", type=float)
        p.add_argument("--tmax", type=float)
        p.add_argument("--no-dealias", action="store_true")
        p.add_argument("--eps", type=float)
        p.add_argument("--kp", type=float)
        p.add_argument("--plots", action="store_true", help="also write SVG figures")
        return p

    common(sub.add_parser("simulate", help="full run: diagnostics, snapshots, manifest"))
    common(sub.add_parser("perturb", help="paired base/perturbed runs and the growth-rate series"))
    common(sub.add_parser("spectrum", help="final-time Fourier amplitudes"))
    p = common(sub.add_parser("converge", help="temporal order and spectrum tail vs N"))
    p.add_argument("--dt-levels", type=_floats, default=[1e-2, 5e-3, 2.5e-3])
    p.add_argument("--n-levels", type=_ints, default=[])
    p.add_argument("--reference-dt", type=float)
    p = common(sub.add_parser("dispersion", help="omega^2, group/phase velocity and KdV tables"))
    p.add_argument("--kmin", type=float, default=0.0)
    p.add_argument("--kmax", type=float, default=0.57)
    p.add_argument("--nk", type=int, default=58)
    p.add_argument("--kdv-alpha", type=float, default=1.0)
    p.add_argument("--kdv-beta", type=float, default=1.0)
    p = common(sub.add_parser("twave", help="traveling-wave slope catalog over wave speeds"))
    p.add_argument("--c", type=_floats, help="comma-separated speeds")
    p.add_argument("--cmin", type=float, default=0.0)
    p.add_argument("--cmax", type=float, default=3.0)
    p.add_argument("--nc", type=int, default=13)
    return parser


def load_config(args) -> cfgmod.RunConfig:
    if args.config and args.preset:
        raise ConfigurationError("use either --config or --preset", field="argv")
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigurationError(f"cannot read {args.config}: {exc}", field="config") from exc
        doc = cfgmod.parse_config(text).to_dict()
    else:
        doc = cfgmod.preset(args.preset or "focusing")
    for flag, (section, key) in OVERRIDES.items():
        value = getattr(args, flag)
        if value is not None:
            doc.setdefault(section, {})[key] = value
    if args.no_dealias:
        doc["dealias"] = False
    if args.eps is not None or args.kp is not None:
        pert = dict(doc.get("perturbation") or {"eps": 1e-3, "k_p": 2.0})
        if args.eps is not None:
            pert["eps"] = args.eps
        if args.kp is not None:
            pert["k_p"] = args.kp
        doc["perturbation"] = pert
    if args.tmax is not None and "snapshot_times" not in doc.get("outputs", {}):
        doc.setdefault("outputs", {})["snapshot_times"] = None
    outs = doc.get("outputs") or {}
    if outs.get("snapshot_times") and args.tmax is not None:
        outs["snapshot_times"] = [t for t in outs["snapshot_times"] if t <= args.tmax]
    if args.plots:
        doc.setdefault("outputs", {})["plots"] = doc.get("outputs", {}).get("plots") or "plots"
    return cfgmod.from_dict(doc)


def derived_values(cfg: cfgmod.RunConfig) -> dict:
    grid = cfg.grid_spec()
    return {
        "dx": grid.dx,
        "dt": cfg.resolved_dt(),
        "omega_cap": omega_cap(cfg.params, grid),
        "k_p_snapped": None if cfg.perturbation is None else cfg.perturbation.snapped_kp(grid),
        "sigma_exploratory": cfg.params.exploratory,
    }


def _blowup_doc(record):
    if record is None:
        return None
    return {"t_blow": record.t_blow, "trigger": record.trigger, "max_abs": record.max_abs}


def write_manifest(out, cfg, command, blowup=None, extra=None):
    doc = {
        "command": command,
        "config": cfg.to_dict(),
        "derived": derived_values(cfg),
        "software": {"name": "nlwave", "version": __version__, "numpy": np.__version__},
        "blowup": _blowup_doc(blowup),
    }
    if extra:
        doc.update(extra)
    return io.write_json(out / "manifest.json", doc)


def _plot_dir(out, cfg):
    return None if cfg.outputs.plots is None else out / cfg.outputs.plots


def cmd_simulate(args, cfg, out):
    grid = cfg.grid_spec()
    res = simulate(cfg.params, grid, cfg.initial_fields(grid), cfg.control, cfg.dealias,
                   cfg.outputs.snapshot_times, cfg.stepper)
    io.write_diagnostics(res.diagnostics, out / cfg.outputs.diagnostics)
    io.write_snapshots(res.snapshots, grid, out / cfg.outputs.snapshots)
    extra = {"steps": res.steps}
    if res.blowup is None:
        extra["energy_drift"] = analysis.conservation_drift(res.diagnostics, "energy")
        extra["mass_drift"] = analysis.conservation_drift(res.diagnostics, "mass")
    write_manifest(out, cfg, "simulate", res.blowup, extra)
    pdir = _plot_dir(out, cfg)
    if pdir is not None and res.snapshots:
        plots.render_plot("lines", {"x": grid.x, "snapshots": res.snapshots, "xlim": (-10, 10)},
                          pdir / "snapshots.svg")
        if len(res.snapshots) > 1:
            plots.render_plot("heatmap", {"x": grid.x, "times": [t for t, _ in res.snapshots],
                                          "fields": np.array([p for _, p in res.snapshots])},
                              pdir / "heatmap.svg")
        if res.blowup is None:
            amp = np.abs(res.state.psi_hat)
            plots.render_plot("spectrum", {"k": grid.k, "series": [("final", amp / amp.max())]},
                              pdir / "spectrum.svg")
    if res.blowup is not None:
        print(f"blow-up at t={res.blowup.t_blow:.6g} ({res.blowup.trigger})", file=sys.stderr)
        return EXIT_BLOWUP
    print(f"simulate: {res.steps} steps, energy drift {extra['energy_drift']:.3e}")
    return EXIT_OK


def cmd_perturb(args, cfg, out):
    if cfg.perturbation is None:
        raise ConfigurationError("perturb needs a perturbation block or --eps/--kp", field="perturbation")
    grid = cfg.grid_spec()
    ic = cfg.initial_fields(grid)
    res = analysis.run_perturbation(cfg.params, grid, ic.psi, ic.psi_t, cfg.perturbation, cfg.control,
                                    cfg.dealias, stepper=cfg.stepper)
    io.write_gamma(res.times, res.gamma, out / cfg.outputs.gamma)
    diag = Path(cfg.outputs.diagnostics)
    io.write_diagnostics(res.base.diagnostics, out / diag)
    io.write_diagnostics(res.perturbed.diagnostics, out / diag.with_name(diag.stem + "_perturbed.csv"))
    blowup = res.base.blowup or res.perturbed.blowup
    write_manifest(out, cfg, "perturb", blowup,
                   {"gamma0": float(res.gamma[0]), "gamma_max": float(np.max(res.gamma))})
    pdir = _plot_dir(out, cfg)
    if pdir is not None:
        plots.render_plot("gamma", {"t": res.times, "gamma": res.gamma}, pdir / "gamma.svg")
        if blowup is None:
            a, b = np.abs(res.base.state.psi_hat), np.abs(res.perturbed.state.psi_hat)
            plots.render_plot("spectrum", {"k": grid.k, "series": [("unperturbed", a / a.max()),
                                                                   ("perturbed", b / b.max())]},
                              pdir / "spectrum_perturbed.svg")
    if blowup is not None:
        return EXIT_BLOWUP
    print(f"perturb: gamma(0)={res.gamma[0]:.4f} max gamma={np.max(res.gamma):.4f} (k_p={res.k_p:.6g})")
    return EXIT_OK


def cmd_spectrum(args, cfg, out):
    grid = cfg.grid_spec()
    res = simulate(cfg.params, grid, cfg.initial_fields(grid), cfg.control, cfg.dealias,
                   stepper=cfg.stepper)
    amp = np.abs(res.state.psi_hat)
    order = np.argsort(grid.k, kind="stable")
    rel = amp / amp.max() if np.isfinite(amp).all() and amp.max() > 0 else amp
    io.write_table(out / "spectrum.csv", ("k", "abs_psi_hat", "relative"),
                   zip(grid.k[order], amp[order], rel[order]))
    write_manifest(out, cfg, "spectrum", res.blowup)
    pdir = _plot_dir(out, cfg)
    if pdir is not None and res.blowup is None:
        plots.render_plot("spectrum", {"k": grid.k, "series": [(f"t={res.state.t:g}", rel)]},
                          pdir / "spectrum.svg")
    if res.blowup is not None:
        return EXIT_BLOWUP
    print(f"spectrum: tail ratio {analysis.spectrum_tail(grid, res.state.fields().psi):.3e}")
    return EXIT_OK


def cmd_converge(args, cfg, out):
    try:
        report = analysis.convergence_study(cfg, args.dt_levels, args.n_levels, args.reference_dt)
    except analysis.StudyAborted as exc:
        write_manifest(out, cfg, "converge", exc.blowup, {"aborted_level": exc.level})
        print(str(exc), file=sys.stderr)
        return EXIT_BLOWUP
    io.write_json(out / "convergence.json", report.as_dict())
    write_manifest(out, cfg, "converge")
    print(f"converge: temporal order {report.temporal_order:.3f} (reference {report.reference})")
    for n, tail in report.spatial:
        print(f"  N={n}: spectrum tail {tail:.3e}")
    return EXIT_OK


def dispersion_rows(params, ks, kdv_alpha, kdv_beta):
    nan = float("nan")
    for k in ks:
        w2 = model.omega_squared(params, k)
        try:
            vg = model.group_velocity(params, k)
        except ArithmeticError:
            vg = nan
        except ValueError:
            vg = nan
        try:
            vp = model.phase_velocity(params, k)
        except ValueError:
            vp = nan
        yield (k, w2, vg, vp, model.kdv_omega(kdv_alpha, kdv_beta, k))


def cmd_dispersion(args, cfg, out):
    if args.nk < 2:
        raise ConfigurationError("--nk must be at least 2", field="nk")
    ks = np.linspace(args.kmin, args.kmax, args.nk)
    rows = list(dispersion_rows(cfg.params, ks, args.kdv_alpha, args.kdv_beta))
    io.write_table(out / "dispersion.csv", ("k", "omega_squared", "group_velocity", "phase_velocity",
                                            "kdv_omega"), rows)
    pdir = _plot_dir(out, cfg)
    if pdir is not None:
        plots.render_plot("dispersion", {"k": ks, "omega_squared": [r[1] for r in rows],
                                         "kdv_omega": [r[4] for r in rows]}, pdir / "dispersion.svg")
    edge = model.band_edge(cfg.params)
    print(f"dispersion: {len(rows)} rows; band edge {'none' if edge is None else f'{edge:.7f}'}")
    return EXIT_OK


def cmd_twave(args, cfg, out):
    cs = args.c if args.c else list(np.linspace(args.cmin, args.cmax, args.nc))
    rows = []
    for c in cs:
        tw = analysis.traveling_wave_slopes(cfg.params, c)
        nonzero = [s for s in tw.slopes if s != 0.0]
        plus = nonzero[0] if nonzero else 0.0
        minus = nonzero[1] if nonzero else 0.0
        radicand = float("nan") if tw.radicand is None else tw.radicand
        rows.append((c, c * c - cfg.params.alpha1, radicand, plus, minus, tw.note))
        print(f"c={c:.6g}: slopes {', '.join(f'{s:+.7f}' for s in tw.slopes)}  [{tw.note}]")
    io.write_table(out / "twave.csv", ("c", "c2_minus_alpha1", "radicand", "slope_plus", "slope_minus",
                                       "note"), rows)
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "perturb": cmd_perturb, "spectrum": cmd_spectrum,
            "converge": cmd_converge, "dispersion": cmd_dispersion, "twave": cmd_twave}


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](args, cfg, out)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(run_command())
