"""Command-line front end.

Thin shell over the library: parses a flat key=value configuration, runs the
requested experiment, writes CSV/JSON artifacts plus plot-ready tables, and
renders companion figures next to them.  Exit status is the machine
contract: 0 when every verdict row passes (flagged known discrepancies do
not fail the run), 1 when any unflagged verdict fails, 2 on configuration
or runtime errors.

Commands:
    simulate        run one ensemble, dump endpoints/trace/summary
    cf-check        series CFs against the direct quadrature CF
    identity-check  closed forms against the quadrature oracle
    limit-check     limit-law convergence campaign for the configured regime
    specfun-eval    evaluate one special function (debugging aid)
    report          re-render figures and plot tables from saved artifacts
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import experiments, plots, specfun
from .charfn import CFGrid, limit_cf_gauss_cauchy
from .distributions import RngStream
from .walk import (
    Regime,
    WalkConfig,
    resolve_scaling,
    run_ensemble,
    walk_trace,
    write_endpoints_csv,
)

_KEY_TYPES = {
    "regime": str,
    "n": int,
    "t": float,
    "mu": float,
    "c1": float,
    "c2": float,
    "b": float,
    "ensemble_size": int,
    "seed": int,
    "grid_min": float,
    "grid_max": float,
    "grid_points": int,
    "tol": float,
}

_POSITIVE_KEYS = {"n", "t", "mu", "b", "ensemble_size", "grid_points", "tol"}
_NONNEGATIVE_KEYS = {"c1", "c2", "seed"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    config_path: Optional[str]
    output_dir: str
    seed_override: Optional[int] = None
    verbosity: int = 0
    extra: Optional[dict] = None      # subcommand-specific flags


def parse_config(path) -> dict:
    """Strict flat key=value parser; unknown keys, type errors, and
    positivity violations are reported with the key name and line number."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
            key, _, text = line.partition("=")
            key, text = key.strip(), text.strip()
            if key not in _KEY_TYPES:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            caster = _KEY_TYPES[key]
            try:
                value = caster(text) if caster is not str else text.lower()
            except ValueError:
                raise ConfigError(
                    f"line {lineno}: key {key!r} expects {caster.__name__}, "
                    f"got {text!r}") from None
            if key in _POSITIVE_KEYS and not value > 0:
                raise ConfigError(f"line {lineno}: key {key!r} must be > 0")
            if key in _NONNEGATIVE_KEYS and value < 0:
                raise ConfigError(f"line {lineno}: key {key!r} must be >= 0")
            values[key] = value
    if "regime" in values and values["regime"] not in ("exponential", "cauchy"):
        raise ConfigError("key 'regime' must be 'exponential' or 'cauchy'")
    return values


def build_walk_config(values: dict) -> WalkConfig:
    for key in ("regime", "n", "ensemble_size", "seed"):
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")
    regime = Regime.EXPONENTIAL if values["regime"] == "exponential" \
        else Regime.FOLDED_CAUCHY
    required = ("t", "mu") if regime is Regime.EXPONENTIAL else ("b",)
    for key in required:
        if key not in values:
            raise ConfigError(f"regime {values['regime']!r} requires key {key!r}")
    return WalkConfig(
        regime=regime,
        n=values["n"],
        ensemble_size=values["ensemble_size"],
        seed=values["seed"],
        t=values.get("t"),
        mu=values.get("mu"),
        b=values.get("b"),
        c1=values.get("c1", 0.0),
        c2=values.get("c2", 0.0),
    )


def grid_axes_from(values: dict):
    lo = values.get("grid_min", -2.0)
    hi = values.get("grid_max", 2.0)
    pts = values.get("grid_points", 21)
    if not hi > lo:
        raise ConfigError("grid_max must exceed grid_min")
    ax = np.linspace(lo, hi, pts)
    return ax, ax.copy()


# ---------------------------------------------------------------------------
# plot-ready tables
# ---------------------------------------------------------------------------

def emit_walk_trace(trace: np.ndarray, path) -> str:
    """Two-column-plus-index table `step,x,y`, origin included."""
    if trace is None or len(trace) == 0:
        raise ValueError("empty trace")
    with open(path, "w") as fh:
        fh.write("step,x,y\n")
        for i, (x, y) in enumerate(trace):
            fh.write(f"{i},{float(x)!r},{float(y)!r}\n")
    return str(path)


def emit_cf_slice(grid: CFGrid, limit: CFGrid, path) -> str:
    """Table `alpha,re_empirical,re_limit` along the beta = 0 axis."""
    j = np.flatnonzero(np.isclose(grid.betas, 0.0))
    if len(j) == 0:
        raise ValueError("grid has no beta = 0 axis")
    j = int(j[0])
    with open(path, "w") as fh:
        fh.write("alpha,re_empirical,re_limit\n")
        for i, a in enumerate(grid.alphas):
            fh.write(f"{float(a)!r},{float(grid.values[i, j].real)!r},"
                     f"{float(limit.values[i, j].real)!r}\n")
    return str(path)


def emit_convergence_table(report, path) -> str:
    """Table `n,distance` from a report's analytic distance rows."""
    rows = [(r.n, r.observed) for r in report.rows
            if r.metric.startswith("analytic_cf_distance:") and r.n is not None]
    if not rows:
        raise ValueError("report has no convergence rows")
    with open(path, "w") as fh:
        fh.write("n,distance\n")
        for n, d in sorted(rows):
            fh.write(f"{n},{d!r}\n")
    return str(path)


def emit_plot_data(artifact, path, limit: Optional[CFGrid] = None) -> str:
    """Write the plot table matching the artifact type (trace array, CF grid
    with its limit, or experiment report)."""
    if isinstance(artifact, np.ndarray):
        return emit_walk_trace(artifact, path)
    if isinstance(artifact, CFGrid):
        if limit is None:
            raise ValueError("a CF slice needs the limit grid")
        return emit_cf_slice(artifact, limit, path)
    if isinstance(artifact, experiments.ExperimentReport):
        return emit_convergence_table(artifact, path)
    raise TypeError(f"no plot table for {type(artifact).__name__}")


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _say(cli: CliConfig, level: int, message: str) -> None:
    if cli.verbosity >= level:
        print(message, file=sys.stderr)


def _finish_report(cli: CliConfig, report) -> int:
    csv_path, json_path = report.write(cli.output_dir)
    _say(cli, 1, f"wrote {csv_path} and {json_path}")
    stem = os.path.splitext(csv_path)[0]
    try:
        plots.plot_convergence(report, stem + "_convergence.png")
        emit_convergence_table(report, stem + "_curve.txt")
    except ValueError:
        pass
    plots.plot_report_rows(report, stem + ".png")
    if report.fail_count:
        _say(cli, 0, f"{report.experiment_id}: {report.fail_count} row(s) failed")
        return 1
    return 0


def _cmd_simulate(cli: CliConfig, values: dict) -> int:
    cfg = build_walk_config(values)
    _say(cli, 1, f"simulating {cfg.ensemble_size} walks of {cfg.n} steps")
    summary = run_ensemble(cfg, retain=True)
    base = os.path.join(cli.output_dir, f"simulate_{cfg.seed}")
    write_endpoints_csv(summary, base + "_endpoints.csv")
    import json

    with open(base + ".json", "w") as fh:
        json.dump({
            "experiment_id": "simulate", "seed": cfg.seed,
            "config": {k: (v.value if isinstance(v, Regime) else v)
                       for k, v in vars(cfg).items()},
            "count": summary.count,
            "mean_x": summary.mean_x, "mean_y": summary.mean_y,
            "var_x": summary.var_x, "var_y": summary.var_y,
            "cov_xy": summary.cov_xy,
        }, fh, indent=2, sort_keys=True)
        fh.write("\n")
    trace = walk_trace(resolve_scaling(cfg), cfg.n, RngStream(cfg.seed, 0))
    emit_walk_trace(trace, base + "_path.txt")
    plots.plot_walk_trace(trace, base + "_path.png")
    plots.plot_endpoint_scatter(summary.retained_endpoints, base + "_endpoints.png")
    _say(cli, 1, f"wrote {base}_endpoints.csv, {base}_path.txt and figures")
    return 0


def _cmd_cf_check(cli: CliConfig, values: dict) -> int:
    tol = values.get("tol", 1e-7)
    pts = values.get("grid_points", 9)
    report = experiments.cf_oracle_equivalence(tol=tol, grid_points=pts)
    return _finish_report(cli, report)


def _cmd_identity_check(cli: CliConfig, values: dict) -> int:
    report = experiments.identity_campaign(tol=values.get("tol", 1e-8))
    status = _finish_report(cli, report)
    detail_path = os.path.join(cli.output_dir,
                               f"{report.experiment_id}_{report.seed}_details.csv")
    experiments.identity_details_csv(report, detail_path)
    _say(cli, 1, f"wrote {detail_path}")
    return status


def _limit_n_list(n: int) -> list[int]:
    return sorted({max(100, n // 100), max(100, n // 10), n})


def _cmd_limit_check(cli: CliConfig, values: dict) -> int:
    cfg = build_walk_config(values)
    axes = grid_axes_from(values)
    n_list = _limit_n_list(cfg.n)
    m = cfg.ensemble_size
    status = 0
    if cfg.regime is Regime.EXPONENTIAL:
        rep = experiments.variance_convergence(cfg.t, cfg.mu, cfg.c1, cfg.c2,
                                               [cfg.n], m, cfg.seed)
        status |= _finish_report(cli, rep)
        rep = experiments.cf_convergence_gaussian(cfg.t, cfg.mu, cfg.c1, cfg.c2,
                                                  n_list, m, cfg.seed,
                                                  grid_axes=axes)
        status |= _finish_report(cli, rep)
    else:
        grid_path = os.path.join(cli.output_dir,
                                 f"empirical_cf_grid_{cfg.seed}.csv")
        rep = experiments.cf_convergence_cauchy(cfg.b, cfg.c1, cfg.c2,
                                                n_list, m, cfg.seed,
                                                grid_axes=axes,
                                                dump_grid_to=grid_path)
        status |= _finish_report(cli, rep)
        # CF slice of the empirical endpoints against the limit law would
        # need the retained ensemble; the negligible-term decay track is the
        # cheap, deterministic companion here
        rep = experiments.negligible_term_check(cfg.b,
                                                [100, 316, 1000, 3162, 10000],
                                                c1=cfg.c1, c2=cfg.c2)
        status |= _finish_report(cli, rep)
    return status


_SPECFUN_DISPATCH = {
    "bessel_j": lambda order, x: specfun.bessel_j(int(order), x),
    "bessel_i": lambda order, x: specfun.bessel_i(int(order), x),
    "macdonald_k": lambda order, x: specfun.macdonald_k(int(order), x),
    "struve_l": lambda order, x: specfun.struve_l(int(order), x),
    "anger_jbar": lambda order, x: specfun.anger_jbar(float(order), x),
    "i_minus_l": lambda order, x: specfun.i_minus_l(int(order), x),
}


def _cmd_specfun_eval(cli: CliConfig) -> int:
    extra = cli.extra or {}
    fn = extra.get("fn")
    if fn not in _SPECFUN_DISPATCH:
        print(f"unknown function {fn!r}; choose from "
              f"{sorted(_SPECFUN_DISPATCH)}", file=sys.stderr)
        return 2
    sv = _SPECFUN_DISPATCH[fn](extra["order"], extra["x"])
    print(f"{fn}({extra['order']}, {extra['x']}) = {sv.value!r} "
          f"(abs error bound {sv.abs_error_bound:.3e})")
    return 0


def _cmd_report(cli: CliConfig) -> int:
    """Re-render plot tables and figures from previously written artifacts."""
    src = cli.config_path
    if src is None or not os.path.exists(src):
        print(f"report source not found: {src}", file=sys.stderr)
        return 2
    paths = [src] if os.path.isfile(src) else \
        [os.path.join(src, p) for p in sorted(os.listdir(src))
         if p.endswith(".csv")]
    rendered = 0
    for path in paths:
        with open(path) as fh:
            header = fh.readline().strip()
        stem = os.path.join(cli.output_dir,
                            os.path.splitext(os.path.basename(path))[0])
        if header.startswith("n,ensemble_size,metric"):
            report = _read_report_csv(path)
            try:
                plots.plot_convergence(report, stem + "_convergence.png")
                emit_convergence_table(report, stem + "_curve.txt")
            except ValueError:
                pass
            plots.plot_report_rows(report, stem + ".png")
            rendered += 1
        elif header.startswith("walk_index,"):
            data = np.loadtxt(path, delimiter=",", skiprows=1)
            plots.plot_endpoint_scatter(data[:, 1:3], stem + ".png")
            rendered += 1
        elif header.startswith("alpha,beta,re,im"):
            grid = _read_cf_grid_csv(path)
            limit = CFGrid(grid.alphas, grid.betas, np.array(
                [[limit_cf_gauss_cauchy(a, b, b=1.0, c1=0.0, c2=0.0)
                  for b in grid.betas] for a in grid.alphas]))
            emit_cf_slice(grid, limit, stem + "_slice.txt")
            j = int(np.flatnonzero(np.isclose(grid.betas, 0.0))[0])
            plots.plot_cf_slice(grid.alphas, grid.values[:, j].real,
                                limit.values[:, j].real, stem + "_slice.png")
            rendered += 1
        elif header.startswith("step,x,y"):
            data = np.loadtxt(path, delimiter=",", skiprows=1)
            plots.plot_walk_trace(data[:, 1:3], stem + ".png")
            rendered += 1
    if rendered == 0:
        print("no renderable artifacts found", file=sys.stderr)
        return 2
    _say(cli, 1, f"re-rendered {rendered} artifact(s)")
    return 0


def _read_report_csv(path) -> experiments.ExperimentReport:
    rows = []
    with open(path) as fh:
        next(fh)
        for line in fh:
            parts = line.rstrip("\n").split(",")
            n = int(parts[0]) if parts[0] else None
            m = int(parts[1]) if parts[1] else None
            rows.append(experiments.ReportRow(
                n, m, parts[2], float(parts[3]), float(parts[4]),
                float(parts[5]), flag=parts[7] if len(parts) > 7 else ""))
    name = os.path.splitext(os.path.basename(path))[0]
    return experiments.ExperimentReport(name, {}, rows, 0)


def _read_cf_grid_csv(path) -> CFGrid:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    alphas = np.unique(data[:, 0])
    betas = np.unique(data[:, 1])
    values = (data[:, 2] + 1j * data[:, 3]).reshape(len(alphas), len(betas))
    return CFGrid(alphas, betas, values)


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def dispatch(cli: CliConfig) -> int:
    """Run the configured command; returns the process exit status."""
    try:
        os.makedirs(cli.output_dir, exist_ok=True)
        if cli.command == "specfun-eval":
            return _cmd_specfun_eval(cli)
        if cli.command == "report":
            return _cmd_report(cli)
        values = parse_config(cli.config_path)
        if cli.seed_override is not None:
            values["seed"] = cli.seed_override
        if cli.command == "simulate":
            return _cmd_simulate(cli, values)
        if cli.command == "cf-check":
            return _cmd_cf_check(cli, values)
        if cli.command == "identity-check":
            return _cmd_identity_check(cli, values)
        if cli.command == "limit-check":
            return _cmd_limit_check(cli, values)
        print(f"unknown command {cli.command!r}", file=sys.stderr)
        return 2
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="flightlab",
        description="planar random-flight simulation and verification lab")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        p.add_argument("--config", required=needs_config,
                       help="flat key=value configuration file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="override the configured seed")
        p.add_argument("-v", "--verbose", action="count", default=0)

    for name in ("simulate", "cf-check", "identity-check", "limit-check"):
        common(sub.add_parser(name))
    p_eval = sub.add_parser("specfun-eval", help="evaluate one special function")
    common(p_eval, needs_config=False)
    p_eval.add_argument("--fn", required=True)
    p_eval.add_argument("--order", type=float, default=0.0)
    p_eval.add_argument("--x", type=float, required=True)
    p_rep = sub.add_parser("report", help="re-render saved artifacts")
    common(p_rep, needs_config=False)
    p_rep.add_argument("--from", dest="source", default=None,
                       help="artifact file or directory (defaults to --config)")

    args = parser.parse_args(argv)
    extra = None
    config_path = getattr(args, "config", None)
    if args.command == "specfun-eval":
        extra = {"fn": args.fn, "order": args.order, "x": args.x}
    if args.command == "report" and args.source is not None:
        config_path = args.source
    cli = CliConfig(command=args.command, config_path=config_path,
                    output_dir=args.out, seed_override=args.seed,
                    verbosity=args.verbose, extra=extra)
    return dispatch(cli)


if __name__ == "__main__":
    raise SystemExit(main())
