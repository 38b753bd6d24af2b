"""Command line runner: named scenarios, one output directory per run.

Each run writes manifest.json (inputs, code version, wall time) next to
the scenario's CSV/JSON artifacts, so two runs can be diffed file by
file. Everything except the wall time is deterministic for a fixed
config and seed.
"""

import argparse
import configparser
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import analysis, ansatz, pde, profile, reporting, stepper, toda
from .errors import ConfigError, LayerlabError

RUN_DEFAULTS = {"output": "", "seed": 0}

DEFAULTS = {
    "constants": {"k": 2, "quad_tol": 1e-12},
    "eta": {"t_end": 1e6, "rel_tol": 1e-10, "samples_per_decade": 32},
    "toda": {
        "k": 2,
        "n": 2,
        "t_seed": -1e2,
        "t_far": -1e5,
        "rel_tol": 1e-10,
        "gap_floor": 0.2,
        "quad_tol": 1e-12,
        "eta_rel_tol": 1e-10,
    },
    "picard": {
        "k": 2,
        "n": 2,
        "t0": 1e3,
        "t_end": 1e5,
        "max_iters": 60,
        "tol": 1e-9,
        "forcing": "full",
        "nodes_per_decade": 48,
        "quad_tol": 1e-12,
        "eta_rel_tol": 1e-10,
    },
    "pde": {
        "k": 1,
        "n": 2,
        "t_start": -50.0,
        "t_stop": -5.0,
        "h": 0.05,
        "dt": 1e-3,
        "scheme": "imex",
        "snapshot_dt": 0.5,
        "r_pad": 20.0,
        "sigma": 1.0,
        "perturb": 0.0,
        "quad_tol": 1e-12,
        "eta_rel_tol": 1e-10,
    },
    "end2end": {
        "k": 2,
        "n": 2,
        "t_start": -50.0,
        "t_stop": -28.0,
        "h": 0.05,
        "dt": 1e-3,
        "scheme": "imex",
        "snapshot_dt": 0.5,
        "r_pad": 20.0,
        "t_seed": -1e2,
        "t_far": -1e5,
        "ode_rel_tol": 1e-10,
        "quad_tol": 1e-12,
        "eta_rel_tol": 1e-10,
    },
    "rescale": {
        "k": 1,
        "n": 2,
        "epsilon": 0.5,
        "t_start": -9.0,
        "t_stop": -4.0,
        "h": 0.05,
        "dt": 1e-3,
        "scheme": "cn",
        "snapshot_dt": 0.5,
        "r_pad": 20.0,
        "quad_tol": 1e-12,
        "eta_rel_tol": 1e-10,
    },
}


def _coerce(section, key, raw, default):
    kind = type(default)
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        return str(raw)
    except ValueError:
        raise ConfigError(
            f"[{section}] {key}: cannot parse {raw!r} as {kind.__name__}"
        ) from None


def load_config(path):
    """Parse an INI config into (scenario, run settings, scenario settings).

    Key set is closed: anything not in the defaults is a ConfigError with
    the offending field named.
    """
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigError(f"cannot read config file {path}")
    if not parser.has_option("run", "scenario"):
        raise ConfigError("config needs [run] with a 'scenario' key")
    scenario = parser.get("run", "scenario").strip()
    if scenario not in DEFAULTS:
        raise ConfigError(
            f"unknown scenario {scenario!r}; choose from "
            f"{', '.join(sorted(DEFAULTS))}"
        )
    run_cfg = dict(RUN_DEFAULTS)
    for key, raw in parser.items("run"):
        if key == "scenario":
            continue
        if key not in run_cfg:
            raise ConfigError(f"unknown key {key!r} in [run]")
        run_cfg[key] = _coerce("run", key, raw, RUN_DEFAULTS[key])
    cfg = dict(DEFAULTS[scenario])
    if parser.has_section(scenario):
        for key, raw in parser.items(scenario):
            if key not in cfg:
                raise ConfigError(f"unknown key {key!r} in [{scenario}]")
            cfg[key] = _coerce(scenario, key, raw, cfg[key])
    return scenario, run_cfg, cfg


def default_config_text():
    lines = [
        "[run]",
        "scenario = <one of: %s>" % " | ".join(sorted(DEFAULTS)),
        "output = runs/<scenario>",
        "seed = 0",
        "",
    ]
    for scenario in sorted(DEFAULTS):
        lines.append(f"[{scenario}]")
        for key, value in DEFAULTS[scenario].items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)


def _constants_pair(cfg):
    consts = profile.compute_beta(cfg["quad_tol"])
    return consts, toda.toda_constants(cfg["k"], consts.beta)


def _eta_covering(abs_t, rel_tol):
    return toda.solve_eta(max(10.0, abs_t), rel_tol)


def _far_field(k):
    return 1.0 if k % 2 else -1.0


def _seed_field(cfg, tc, eta, rng=None):
    """Ansatz-valued initial field at t_start on a grid padded past the
    outermost layer."""
    init = toda.first_approximation(cfg["k"], cfg["n"], tc, eta, cfg["t_start"])
    grid = pde.RadialGrid.with_spacing(
        cfg["n"], float(init.rho[-1]) + cfg["r_pad"], cfg["h"]
    )
    values = ansatz.evaluate_z(ansatz.MultiLayerAnsatz(init), grid.nodes)
    if rng is not None and cfg.get("perturb", 0.0) > 0:
        values = np.clip(
            values + cfg["perturb"] * rng.standard_normal(grid.m), -1.0, 1.0
        )
    return init, pde.RadialField(grid=grid, values=values, t=cfg["t_start"])


def scenario_constants(cfg, seed, outdir):
    consts, tc = _constants_pair(cfg)
    reporting.write_json(
        outdir / "constants.json",
        {
            "k": cfg["k"],
            "beta": consts.beta,
            "i_kinetic": consts.i_kinetic,
            "i_tail": consts.i_tail,
            "b": tc.b,
            "gamma": tc.gamma,
            "odd_k_experimental": cfg["k"] % 2 == 1,
        },
    )


def scenario_eta(cfg, seed, outdir):
    sol = toda.solve_eta(cfg["t_end"], cfg["rel_tol"])
    decades = np.log10(cfg["t_end"])
    n_samples = int(round(cfg["samples_per_decade"] * decades)) + 1
    t = -np.power(10.0, np.linspace(0.0, decades, n_samples))
    t[0] = -1.0
    reporting.write_csv(
        outdir / "eta.csv",
        ["t", "eta", "eta_prime"],
        [t, sol.eta(t), sol.eta_prime(t)],
    )
    _, resid = sol.residual_at_midpoints()
    tail = t[-t >= 1e3]
    payload = {
        "t_end": cfg["t_end"],
        "rel_tol": cfg["rel_tol"],
        "residual_max": float(np.max(np.abs(resid))),
        "upper_bound_margin": sol.upper_bound_margin(),
        "deviation_bound": (
            float(np.max(np.abs(sol.asymptotic_deviation(tail))))
            if len(tail)
            else None
        ),
    }
    reporting.write_json(outdir / "eta.json", payload)


def _fan_fit_payload(track, n, k):
    try:
        fit = analysis.fit_theorem12(track, n, k)
    except LayerlabError as exc:
        return {"error": str(exc)}
    return {
        "slopes": fit.slopes,
        "intercepts": fit.intercepts,
        "rms": fit.rms,
        "stderr": fit.stderr,
        "window": list(fit.window),
        "n_used": fit.n_used,
    }


def _gap_law_deviation(track, tc, eta, t_floor=1e3):
    """max |gap_l - (eta + b_l)| over samples with |t| >= t_floor."""
    if track.k < 2:
        return None
    sel = -track.times >= t_floor
    if not np.any(sel):
        return None
    gaps = track.gaps()[sel]
    dev = gaps - (eta.eta(track.times[sel])[:, None] + tc.b[None, :])
    return float(np.max(np.abs(dev)))


def _integrate_reported(k, n, beta, init, t_far, rel_tol, gap_floor):
    """integrate_toda with layer collision downgraded to a reported
    partial trajectory (expected behavior near t -> 0)."""
    try:
        return toda.integrate_toda(
            k, n, beta, init, t_far, rel_tol=rel_tol, gap_floor=gap_floor
        )
    except toda.CollisionError as exc:
        if exc.partial is None:
            raise
        return exc.partial


def scenario_toda(cfg, seed, outdir):
    consts, tc = _constants_pair(cfg)
    abs_far = max(abs(cfg["t_seed"]), abs(cfg["t_far"]))
    eta = _eta_covering(abs_far, cfg["eta_rel_tol"])
    init = toda.first_approximation(cfg["k"], cfg["n"], tc, eta, cfg["t_seed"])
    traj = _integrate_reported(
        cfg["k"],
        cfg["n"],
        consts.beta,
        init,
        cfg["t_far"],
        cfg["rel_tol"],
        cfg["gap_floor"],
    )
    reporting.write_trajectory_csv(outdir / "trajectory.csv", traj.times, traj.radii)
    track = analysis.InterfaceTrack.from_toda(traj)
    reporting.write_json(
        outdir / "toda.json",
        {
            "k": cfg["k"],
            "n": cfg["n"],
            "beta": consts.beta,
            "t_seed": cfg["t_seed"],
            "t_far": cfg["t_far"],
            "status": traj.status,
            "fan_fit": _fan_fit_payload(track, cfg["n"], cfg["k"]),
            "gap_law_deviation": _gap_law_deviation(track, tc, eta),
            "odd_k_experimental": cfg["k"] % 2 == 1,
        },
    )


def scenario_picard(cfg, seed, outdir):
    consts, tc = _constants_pair(cfg)
    eta = _eta_covering(cfg["t_end"], cfg["eta_rel_tol"])
    report = toda.picard_correction(
        cfg["k"],
        cfg["n"],
        tc,
        eta,
        cfg["t0"],
        cfg["t_end"],
        max_iters=cfg["max_iters"],
        tol=cfg["tol"],
        forcing=cfg["forcing"],
        nodes_per_decade=cfg["nodes_per_decade"],
    )
    reporting.write_csv(
        outdir / "h.csv",
        ["t"] + [f"h_{j}" for j in range(1, cfg["k"] + 1)],
        [report.t] + [report.h[:, j] for j in range(cfg["k"])],
    )
    reporting.write_json(
        outdir / "picard.json",
        {
            "k": cfg["k"],
            "n": cfg["n"],
            "T0": report.T0,
            "T_end": report.T_end,
            "forcing": report.forcing,
            "converged": report.converged,
            "iterations": report.iterations,
            "changes": report.changes,
            "geometric_decrease": toda.geometric_decrease(report.changes),
            "sup_h": float(np.max(np.abs(report.h))),
            "envelope_coefficient": report.envelope_coefficient,
            "envelope_rms_ratio": report.envelope_rms_ratio,
            "envelope_window": list(report.envelope_window),
        },
    )


def _track_stats(track, n):
    """Curvature-law residual and collapse-law fit for an extracted track."""
    _, resid = analysis.mcf_residual(track, n)
    rel = np.abs(resid) * track.radii / (n - 1)
    c_fit = track.radii[:, 0] ** 2 + 2.0 * (n - 1) * track.times
    return {
        "mcf_max_rel": float(np.max(rel)),
        "c_fit_mean": float(np.mean(c_fit)),
        "c_fit_drift": float(np.max(c_fit) - np.min(c_fit)),
    }


def scenario_pde(cfg, seed, outdir):
    consts, tc = _constants_pair(cfg)
    eta = _eta_covering(abs(cfg["t_start"]), cfg["eta_rel_tol"])
    rng = np.random.default_rng(seed)
    init, field = _seed_field(cfg, tc, eta, rng)
    config = pde.SolverConfig(
        dt=cfg["dt"], scheme=cfg["scheme"], far_field=_far_field(cfg["k"])
    )
    result = pde.evolve(
        field,
        config,
        cfg["t_stop"],
        snapshot_dt=cfg["snapshot_dt"],
        expected_k=cfg["k"],
    )
    track = analysis.InterfaceTrack.from_evolve(result)
    reporting.write_trajectory_csv(outdir / "track.csv", track.times, track.radii)
    reporting.write_snapshot_csv(
        outdir / "snapshot_initial.csv", field.grid.nodes, field.values
    )
    reporting.write_snapshot_csv(
        outdir / "snapshot_final.csv", result.grid.nodes, result.snapshots[-1]
    )
    weights = ansatz.WeightFunction(
        sigma=cfg["sigma"],
        rho0=init.rho,
        eta_value=max(eta.eta(cfg["t_start"]), 1e-3),
    )
    bound = ansatz.check_error_bound(
        ansatz.MultiLayerAnsatz(init),
        weights,
        cfg["n"],
        field.grid,
        beta=consts.beta,
    )
    payload = {
        "k": cfg["k"],
        "n": cfg["n"],
        "h": cfg["h"],
        "dt": cfg["dt"],
        "scheme": cfg["scheme"],
        "t_start": cfg["t_start"],
        "t_stop": cfg["t_stop"],
        "sigma": cfg["sigma"],
        "perturb": cfg["perturb"],
        "max_abs": float(np.max(result.max_abs)),
        "initial_error_bound": float(bound),
    }
    payload.update(_track_stats(track, cfg["n"]))
    reporting.write_json(outdir / "pde.json", payload)


def scenario_end2end(cfg, seed, outdir):
    consts, tc = _constants_pair(cfg)
    abs_far = max(abs(cfg["t_start"]), abs(cfg["t_seed"]), abs(cfg["t_far"]))
    eta = _eta_covering(abs_far, cfg["eta_rel_tol"])
    init, field = _seed_field(cfg, tc, eta)

    config = pde.SolverConfig(
        dt=cfg["dt"], scheme=cfg["scheme"], far_field=_far_field(cfg["k"])
    )
    result = pde.evolve(
        field,
        config,
        cfg["t_stop"],
        snapshot_dt=cfg["snapshot_dt"],
        expected_k=cfg["k"],
    )
    pde_track = analysis.InterfaceTrack.from_evolve(result)
    reporting.write_trajectory_csv(
        outdir / "pde_track.csv", pde_track.times, pde_track.radii
    )
    reporting.write_snapshot_csv(
        outdir / "snapshot_final.csv", result.grid.nodes, result.snapshots[-1]
    )

    # same window at ODE level, from the same initial radii
    traj = _integrate_reported(
        cfg["k"], cfg["n"], consts.beta, init, cfg["t_stop"],
        cfg["ode_rel_tol"], 0.2,
    )
    reporting.write_trajectory_csv(
        outdir / "toda_track.csv", traj.times, traj.radii
    )
    comparison = analysis.compare_pde_vs_toda(
        pde_track, analysis.InterfaceTrack.from_toda(traj)
    )

    # ancient-direction leg carries the fan-out fit; the desk window
    # above is too short for it
    seed_state = toda.first_approximation(
        cfg["k"], cfg["n"], tc, eta, cfg["t_seed"]
    )
    ancient = _integrate_reported(
        cfg["k"], cfg["n"], consts.beta, seed_state, cfg["t_far"],
        cfg["ode_rel_tol"], 0.2,
    )
    ancient_track = analysis.InterfaceTrack.from_toda(ancient)
    reporting.write_trajectory_csv(
        outdir / "toda_ancient.csv", ancient.times, ancient.radii
    )

    payload = {
        "k": cfg["k"],
        "n": cfg["n"],
        "beta": consts.beta,
        "pde_window": [cfg["t_start"], cfg["t_stop"]],
        "ancient_window": [cfg["t_seed"], cfg["t_far"]],
        "fan_fit": _fan_fit_payload(ancient_track, cfg["n"], cfg["k"]),
        "gap_law_deviation": _gap_law_deviation(ancient_track, tc, eta),
        # forward-window deviation from the gap law: grows by design, the
        # structure is unstable forward in time; reported, not gated
        "gap_law_deviation_forward": _gap_law_deviation(
            pde_track, tc, eta, t_floor=0.0
        ),
        "pde_vs_toda_max": comparison.max_discrepancy,
        "odd_k_experimental": cfg["k"] % 2 == 1,
    }
    if comparison.gap_diff is not None:
        payload["pde_vs_toda_gap_max"] = float(np.max(comparison.gap_diff))
    reporting.write_json(outdir / "fit.json", payload)


def scenario_rescale(cfg, seed, outdir):
    eps = cfg["epsilon"]
    if not 0 < eps <= 1:
        raise ConfigError(f"[rescale] epsilon: must be in (0, 1], got {eps}")
    consts, tc = _constants_pair(cfg)
    eta = _eta_covering(abs(cfg["t_start"]) / eps**2, cfg["eta_rel_tol"])
    init, field = _seed_field(cfg, tc, eta)
    far = _far_field(cfg["k"])

    base = pde.evolve(
        field,
        pde.SolverConfig(dt=cfg["dt"], scheme=cfg["scheme"], far_field=far),
        cfg["t_stop"],
        snapshot_dt=cfg["snapshot_dt"],
    )

    fine_grid = pde.RadialGrid.with_spacing(
        cfg["n"], field.grid.r_max, cfg["h"] / 2
    )
    fine_field = pde.RadialField(
        grid=fine_grid,
        values=ansatz.evaluate_z(ansatz.MultiLayerAnsatz(init), fine_grid.nodes),
        t=cfg["t_start"],
    )
    fine = pde.evolve(
        fine_field,
        pde.SolverConfig(dt=cfg["dt"] / 2, scheme=cfg["scheme"], far_field=far),
        cfg["t_stop"],
        snapshot_dt=cfg["snapshot_dt"],
    )
    refinement_error = pde.rescale_check(fine, base, 1.0)

    # same h and dt on the stretched domain: the scaled run is a real
    # second discretization, not the base one relabeled
    wide_grid = pde.RadialGrid.with_spacing(
        cfg["n"], field.grid.r_max / eps, cfg["h"]
    )
    wide_field = pde.RadialField(
        grid=wide_grid,
        values=ansatz.evaluate_z(
            ansatz.MultiLayerAnsatz(init), eps * wide_grid.nodes
        ),
        t=cfg["t_start"] / eps**2,
    )
    scaled = pde.evolve(
        wide_field,
        pde.SolverConfig(
            dt=cfg["dt"],
            scheme=cfg["scheme"],
            far_field=far,
            reaction_scale=eps**2,
        ),
        cfg["t_stop"] / eps**2,
        snapshot_dt=cfg["snapshot_dt"] / eps**2,
    )
    discrepancy = pde.rescale_check(base, scaled, eps)

    reporting.write_json(
        outdir / "rescale.json",
        {
            "k": cfg["k"],
            "n": cfg["n"],
            "epsilon": eps,
            "h": cfg["h"],
            "dt": cfg["dt"],
            "scheme": cfg["scheme"],
            "window": [cfg["t_start"], cfg["t_stop"]],
            "discrepancy": discrepancy,
            "refinement_error": refinement_error,
            "ratio": discrepancy / refinement_error,
        },
    )


SCENARIOS = {
    "constants": scenario_constants,
    "eta": scenario_eta,
    "toda": scenario_toda,
    "picard": scenario_picard,
    "pde": scenario_pde,
    "end2end": scenario_end2end,
    "rescale": scenario_rescale,
}


def run_one(config_path):
    try:
        scenario, run_cfg, cfg = load_config(config_path)
        outdir = Path(run_cfg["output"] or f"runs/{scenario}")
        outdir.mkdir(parents=True, exist_ok=True)
        started = time.perf_counter()
        SCENARIOS[scenario](cfg, run_cfg["seed"], outdir)
        reporting.write_json(
            outdir / "manifest.json",
            {
                "scenario": scenario,
                "config": cfg,
                "seed": run_cfg["seed"],
                "code_version": __version__,
                "backend": stepper.BACKEND_NAME,
                "wall_time_s": time.perf_counter() - started,
            },
        )
        print(f"{scenario}: wrote {outdir}")
        return 0
    except LayerlabError as exc:
        print(f"error [{config_path}]: {exc}", file=sys.stderr)
        return 1


def cmd_run(configs, jobs):
    if jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {jobs}")
    if jobs == 1 or len(configs) == 1:
        codes = [run_one(c) for c in configs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            codes = list(pool.map(run_one, configs))
    return max(codes)


def _resolve_run_dir(arg):
    path = Path(arg)
    if path.is_file():
        path = path.parent
    if not (path / "manifest.json").is_file():
        raise ConfigError(f"{arg}: no manifest.json; not a run directory")
    return path


def cmd_compare(a, b, tol):
    try:
        dir_a = _resolve_run_dir(a)
        dir_b = _resolve_run_dir(b)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    scen_a = reporting.read_json(dir_a / "manifest.json").get("scenario")
    scen_b = reporting.read_json(dir_b / "manifest.json").get("scenario")
    if scen_a != scen_b:
        print(f"schema: scenario: {scen_a!r} vs {scen_b!r}")
        return 2
    schema, numeric = reporting.diff_run_dirs(dir_a, dir_b, tol)
    for field, detail in schema:
        print(f"schema: {field}: {detail}")
    for field, detail in numeric:
        print(f"differs: {field}: {detail}")
    if schema:
        return 2
    if numeric:
        return 1
    print("reports identical within tolerance")
    return 0


def emit_plot_data(path, times, radii, n, beta=None):
    """Plot-ready columns for one track: radii, collapse-sphere theory,
    and for k >= 2 the gaps with their predicted values."""
    k = radii.shape[1] if radii.ndim == 2 else 1
    radii = radii.reshape(len(times), k)
    header = ["t"] + [f"rho_{j}" for j in range(1, k + 1)] + ["zeta"]
    if k >= 2:
        header += [f"gap_{j}" for j in range(1, k)]
        header += [f"eta_plus_b_{j}" for j in range(1, k)]
    if len(times) == 0:
        Path(path).write_text(",".join(header) + "\n", encoding="utf-8")
        return
    columns = [times] + [radii[:, j] for j in range(k)]
    columns.append(profile.shrinking_sphere(n, times))
    if k >= 2:
        if beta is None:
            beta = profile.compute_beta(1e-12).beta
        tc = toda.toda_constants(k, beta)
        eta = _eta_covering(float(np.max(-times)), 1e-10)
        eta_vals = eta.eta(times)
        gaps = np.diff(radii, axis=1)
        columns += [gaps[:, j] for j in range(k - 1)]
        columns += [eta_vals + tc.b[j] for j in range(k - 1)]
    reporting.write_csv(path, header, columns)


_PLOT_SOURCES = {
    "toda": [("trajectory.csv", "plot.csv")],
    "pde": [("track.csv", "plot.csv")],
    "end2end": [
        ("pde_track.csv", "plot_pde.csv"),
        ("toda_ancient.csv", "plot_toda.csv"),
    ],
}


def cmd_plot_data(report, outdir=None):
    rundir = _resolve_run_dir(report)
    manifest = reporting.read_json(rundir / "manifest.json")
    scenario = manifest.get("scenario")
    if scenario not in _PLOT_SOURCES:
        raise ConfigError(f"scenario {scenario!r} has no track data to plot")
    n = int(manifest["config"]["n"])
    beta = manifest.get("config", {}).get("beta")
    dest = Path(outdir) if outdir else rundir
    dest.mkdir(parents=True, exist_ok=True)
    for src, dst in _PLOT_SOURCES[scenario]:
        times, radii = reporting.read_trajectory_csv(rundir / src)
        emit_plot_data(dest / dst, times, radii, n, beta=beta)
        print(f"wrote {dest / dst}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="layerlab",
        description="Collapsing multi-interface dynamics: scenario runner.",
    )
    parser.add_argument(
        "--print-defaults",
        action="store_true",
        help="print a config template with every default and exit",
    )
    sub = parser.add_subparsers(dest="command")

    p_run = sub.add_parser("run", help="execute scenario configs")
    p_run.add_argument("configs", nargs="+", help="INI config files")
    p_run.add_argument(
        "--jobs", type=int, default=1, help="worker threads across configs"
    )

    p_cmp = sub.add_parser("compare", help="diff two run directories")
    p_cmp.add_argument("a")
    p_cmp.add_argument("b")
    p_cmp.add_argument(
        "--tol",
        type=float,
        default=0.0,
        help="numeric tolerance (abs and rel); default exact",
    )

    p_plot = sub.add_parser("plot-data", help="emit plot-ready CSV columns")
    p_plot.add_argument("report", help="run directory or manifest.json path")
    p_plot.add_argument("--out", default=None, help="destination directory")

    args = parser.parse_args(argv)
    if args.print_defaults:
        print(default_config_text())
        return 0
    try:
        if args.command == "run":
            return cmd_run(args.configs, args.jobs)
        if args.command == "compare":
            return cmd_compare(args.a, args.b, args.tol)
        if args.command == "plot-data":
            return cmd_plot_data(args.report, args.out)
    except LayerlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.print_help()
    return 2


if __name__ == "__main__":
    sys.exit(main())
