"""Verification campaigns: variance convergence, CF convergence, the
negligible-term measurement, and the closed-form-vs-quadrature identity
campaign, each producing a reproducible :class:`ExperimentReport`.

Verdict convention: a row's ``passed`` flag is recomputed purely from its
recorded numbers.  Metrics whose name ends in ``:le`` are one-sided
(``observed <= expected + tolerance``); all others are two-sided
(``|observed - expected| <= tolerance``).  Rows whose ``flag`` is non-empty
record known printed-formula discrepancies or quadrature non-convergence;
they are excluded from the exit-status failure count but never reported as
passing.

Monte Carlo tolerances follow the four-standard-error rule with standard
errors estimated from the sample itself (fourth moments for variances); the
heavy-tailed regime gets no moment checks at all since its step law has no
finite moments.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import charfn, integrals, walk
from .charfn import (
    analytic_cf_grid,
    cf_distance,
    cf_power,
    default_grid_axes,
    empirical_cf,
    limit_cf_grid,
)
from .distributions import _mix64, uniform_block
from .specfun import bessel_j
from .walk import Regime, StepParams, WalkConfig, resolve_scaling, run_ensemble

ONE_SIDED_SUFFIX = ":le"


@dataclass(frozen=True)
class ReportRow:
    n: Optional[int]
    ensemble_size: Optional[int]
    metric: str
    observed: float
    expected: float
    tolerance: float
    flag: str = ""

    @property
    def passed(self) -> bool:
        if self.flag:
            return False
        if self.metric.endswith(ONE_SIDED_SUFFIX):
            return self.observed <= self.expected + self.tolerance
        return abs(self.observed - self.expected) <= self.tolerance


@dataclass
class ExperimentReport:
    experiment_id: str
    config: dict
    rows: list[ReportRow]
    seed: int
    wall_time: float = 0.0
    # per-identity detail records (identity campaign only)
    details: list = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("a report must contain at least one row")

    @property
    def pass_count(self) -> int:
        return sum(1 for r in self.rows if r.passed)

    @property
    def fail_count(self) -> int:
        """Failures excluding rows flagged as known discrepancies."""
        return sum(1 for r in self.rows if not r.passed and not r.flag)

    @property
    def flagged_count(self) -> int:
        return sum(1 for r in self.rows if r.flag)

    @property
    def max_abs_deviation(self) -> float:
        return max(abs(r.observed - r.expected) for r in self.rows)

    def csv_text(self) -> str:
        lines = ["n,ensemble_size,metric,observed,expected,tolerance,passed,flag"]
        for r in self.rows:
            n = "" if r.n is None else str(r.n)
            m = "" if r.ensemble_size is None else str(r.ensemble_size)
            lines.append(f"{n},{m},{r.metric},{r.observed!r},{r.expected!r},"
                         f"{r.tolerance!r},{int(r.passed)},{r.flag}")
        return "\n".join(lines) + "\n"

    def json_summary(self) -> dict:
        return {
            "experiment_id": self.experiment_id,
            "seed": self.seed,
            "config": self.config,
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
            "flagged_count": self.flagged_count,
            "max_abs_deviation": self.max_abs_deviation,
            "wall_time": self.wall_time,
        }

    def write(self, out_dir) -> tuple[str, str]:
        """Persist as <experiment_id>_<seed>.csv and .json; returns paths.

        The CSV carries only the rows and is byte-reproducible from
        (experiment_id, seed, config); wall_time lives in the JSON only.
        """
        import os

        os.makedirs(out_dir, exist_ok=True)
        base = os.path.join(str(out_dir), f"{self.experiment_id}_{self.seed}")
        csv_path, json_path = base + ".csv", base + ".json"
        with open(csv_path, "w") as fh:
            fh.write(self.csv_text())
        with open(json_path, "w") as fh:
            json.dump(self.json_summary(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return csv_path, json_path


def _subseed(seed: int, label: int) -> int:
    """Derive a per-stage seed so different n reuse no walk streams."""
    return _mix64((seed ^ (label * 0x9E3779B97F4A7C15)) & ((1 << 64) - 1))


# ---------------------------------------------------------------------------
# moment experiments (exponential regime only)
# ---------------------------------------------------------------------------

def variance_convergence(t: float, mu: float, c1: float, c2: float,
                         n_list: Sequence[int], m: int, seed: int) -> ExperimentReport:
    """Ensemble variances against their limit values, 4-SE tolerances.

    The SE of a sample variance uses the sample fourth moment; the SE of the
    sample covariance uses the mixed fourth moment.
    """
    if m < 10_000:
        raise ValueError("m must be >= 10^4 for stable fourth moments")
    t0 = time.perf_counter()
    vx_exp, vy_exp = charfn.gaussian_variances(t, mu, c1, c2)
    rows: list[ReportRow] = []
    for i, n in enumerate(n_list):
        cfg = WalkConfig(Regime.EXPONENTIAL, n=n, ensemble_size=m,
                         seed=_subseed(seed, i), t=t, mu=mu, c1=c1, c2=c2)
        summ = run_ensemble(cfg, retain=True)
        pts = summ.retained_endpoints
        dx = pts[:, 0] - summ.mean_x
        dy = pts[:, 1] - summ.mean_y
        m4x = float(np.mean(dx ** 4))
        m4y = float(np.mean(dy ** 4))
        m22 = float(np.mean(dx * dx * dy * dy))
        se_vx = math.sqrt(max(m4x - summ.var_x ** 2 * (m - 3) / (m - 1), 0.0) / m)
        se_vy = math.sqrt(max(m4y - summ.var_y ** 2 * (m - 3) / (m - 1), 0.0) / m)
        se_cov = math.sqrt(max(m22 - summ.cov_xy ** 2, 0.0) / m)
        rows.append(ReportRow(n, m, "var_x", summ.var_x, vx_exp, 4 * se_vx))
        rows.append(ReportRow(n, m, "var_y", summ.var_y, vy_exp, 4 * se_vy))
        rows.append(ReportRow(n, m, "cov_xy", summ.cov_xy, 0.0, 4 * se_cov))
        rows.append(ReportRow(n, m, "mean_x", summ.mean_x, 0.0,
                              4 * math.sqrt(summ.var_x / m)))
        rows.append(ReportRow(n, m, "mean_y", summ.mean_y, 0.0,
                              4 * math.sqrt(summ.var_y / m)))
    cfg_dict = {"t": t, "mu": mu, "c1": c1, "c2": c2, "n_list": list(n_list), "m": m}
    return ExperimentReport("variance_convergence", cfg_dict, rows, seed,
                            time.perf_counter() - t0)


def step_moment_identity(t: float, mu: float, c1: float, c2: float,
                         n_list: Sequence[int], m: int, seed: int) -> ExperimentReport:
    """Per-step second moments against (1/n)(t^2/mu^2 + C_i t/mu + C_i^2/2),
    which holds exactly at every n, not just asymptotically."""
    t0 = time.perf_counter()
    rows: list[ReportRow] = []
    for i, n in enumerate(n_list):
        cfg = WalkConfig(Regime.EXPONENTIAL, n=1, ensemble_size=m,
                         seed=_subseed(seed, 1000 + i), t=t, mu=mu, c1=c1, c2=c2)
        # step parameters must be those of an n-step walk
        params = resolve_scaling(WalkConfig(Regime.EXPONENTIAL, n=n, ensemble_size=m,
                                            seed=cfg.seed, t=t, mu=mu, c1=c1, c2=c2))
        u2 = uniform_block(cfg.seed, np.arange(m, dtype=np.uint64), 2)
        r = walk._lengths_from_uniforms(params, u2[:, 0])
        theta = 2.0 * math.pi * u2[:, 1]
        x = (r + params.delta1) * np.cos(theta)
        y = (r + params.delta2) * np.sin(theta)
        vx, vy = charfn.gaussian_variances(t, mu, c1, c2)
        for name, samples, expect in (("step_Ex2", x * x, vx / n),
                                      ("step_Ey2", y * y, vy / n)):
            obs = float(samples.mean())
            se = float(samples.std(ddof=1)) / math.sqrt(m)
            rows.append(ReportRow(n, m, name, obs, expect, 4 * se))
        rows.append(ReportRow(n, m, "step_Exy", float((x * y).mean()), 0.0,
                              4 * float((x * y).std(ddof=1)) / math.sqrt(m)))
    cfg_dict = {"t": t, "mu": mu, "c1": c1, "c2": c2, "n_list": list(n_list), "m": m}
    return ExperimentReport("step_moment_identity", cfg_dict, rows, seed,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# CF convergence experiments
# ---------------------------------------------------------------------------

def _grid_axes(grid_axes) -> tuple[np.ndarray, np.ndarray]:
    if grid_axes is None:
        return default_grid_axes()
    return np.asarray(grid_axes[0], dtype=float), np.asarray(grid_axes[1], dtype=float)


def _trend_row(dists: list[float], n_list: Sequence[int], label: str) -> ReportRow:
    """Largest step-to-step growth of the distance sequence; non-increasing
    within 10 percent slack passes."""
    worst = max(dists[i + 1] / dists[i] for i in range(len(dists) - 1))
    return ReportRow(max(n_list), None, f"{label}_trend_ratio{ONE_SIDED_SUFFIX}",
                     worst, 1.0, 0.1)


def cf_convergence_gaussian(t: float, mu: float, c1: float, c2: float,
                            n_list: Sequence[int], m: int, seed: int,
                            grid_axes=None, k_max: int = 30) -> ExperimentReport:
    """Analytic n-fold CF powers against the Gaussian limit CF, and (for
    m > 0) the empirical CF of an ensemble at the largest n."""
    t0 = time.perf_counter()
    alphas, betas = _grid_axes(grid_axes)
    limit = limit_cf_grid("gaussian", alphas, betas, t=t, mu=mu, c1=c1, c2=c2)
    rows: list[ReportRow] = []
    dists: list[float] = []
    for n in n_list:
        cfg = WalkConfig(Regime.EXPONENTIAL, n=n, ensemble_size=max(m, 1),
                         seed=seed, t=t, mu=mu, c1=c1, c2=c2)
        params = resolve_scaling(cfg)
        powered = cf_power(analytic_cf_grid(params, alphas, betas, k_max=k_max), n)
        d = cf_distance(powered, limit)
        dists.append(d)
        tol = 1e-2 if n == max(n_list) else math.inf
        rows.append(ReportRow(n, None, f"analytic_cf_distance{ONE_SIDED_SUFFIX}",
                              d, 0.0, tol))
    if len(dists) >= 2:
        rows.append(_trend_row(dists, n_list, "analytic"))
    if m > 0:
        n_mc = max(n_list)
        cfg = WalkConfig(Regime.EXPONENTIAL, n=n_mc, ensemble_size=m,
                         seed=_subseed(seed, 7), t=t, mu=mu, c1=c1, c2=c2)
        summ = run_ensemble(cfg, retain=True)
        emp = empirical_cf(summ.retained_endpoints[:, :2], alphas, betas)
        d_mc = cf_distance(emp, limit)
        rows.append(ReportRow(n_mc, m, f"mc_cf_distance{ONE_SIDED_SUFFIX}", d_mc,
                              dists[-1] + 5.0 / math.sqrt(m), 0.0))
    cfg_dict = {"t": t, "mu": mu, "c1": c1, "c2": c2, "n_list": list(n_list),
                "m": m, "grid": [float(alphas[0]), float(alphas[-1]), len(alphas)]}
    return ExperimentReport("cf_convergence_gaussian", cfg_dict, rows, seed,
                            time.perf_counter() - t0)


def cf_convergence_cauchy(b: float, c1: float, c2: float,
                          n_list: Sequence[int], m: int, seed: int,
                          grid_axes=None, k_max: int = 1,
                          ensemble=None, dump_grid_to=None) -> ExperimentReport:
    """Heavy-tailed regime convergence to the Gaussian-convolved circular
    Cauchy limit.

    Tracks, all on the same grid:

    * analytic k_max-term CF powers (the full two-term expansion), with the
      0.02 desk-scale target at the largest n: the second expansion term
      decays only like n^{-1/2} log n (see ``negligible_term_check``), which
      puts 1e-2 out of reach at n = 10^4; the looser target is recorded
      here, never silently;
    * analytic leading-term powers (k_max = 0), which drop that term the
      way the limit derivation does, against the 1e-2 target;
    * for m > 0: the empirical CF of an ensemble at the largest n (0.02),
      the flights-only (u, v) empirical CF against the pure circular-Cauchy
      CF (0.02), and the displacement-pair factorization check (5/sqrt(m)).

    ``ensemble`` allows reusing an already retained ensemble summary for the
    Monte Carlo tracks.
    """
    t0 = time.perf_counter()
    alphas, betas = _grid_axes(grid_axes)
    limit = limit_cf_grid("gauss_cauchy", alphas, betas, b=b, c1=c1, c2=c2)
    rows: list[ReportRow] = []
    dists: list[float] = []
    for n in n_list:
        cfg = WalkConfig(Regime.FOLDED_CAUCHY, n=n, ensemble_size=1,
                         seed=seed, b=b, c1=c1, c2=c2)
        params = resolve_scaling(cfg)
        powered = cf_power(analytic_cf_grid(params, alphas, betas, k_max=k_max), n)
        d = cf_distance(powered, limit)
        dists.append(d)
        tol = 2e-2 if n == max(n_list) else math.inf
        rows.append(ReportRow(n, None, f"analytic_cf_distance{ONE_SIDED_SUFFIX}",
                              d, 0.0, tol))
        powered0 = cf_power(analytic_cf_grid(params, alphas, betas, k_max=0), n)
        d0 = cf_distance(powered0, limit)
        tol0 = 1e-2 if n == max(n_list) else math.inf
        rows.append(ReportRow(n, None,
                              f"analytic_cf_distance_leading{ONE_SIDED_SUFFIX}",
                              d0, 0.0, tol0))
    if len(dists) >= 2:
        rows.append(_trend_row(dists, n_list, "analytic"))
    if m > 0:
        n_mc = max(n_list)
        if ensemble is None:
            cfg = WalkConfig(Regime.FOLDED_CAUCHY, n=n_mc, ensemble_size=m,
                             seed=_subseed(seed, 7), b=b, c1=c1, c2=c2)
            ensemble = run_ensemble(cfg, retain=True)
        pts = ensemble.retained_endpoints
        emp = empirical_cf(pts[:, :2], alphas, betas)
        if dump_grid_to is not None:
            charfn.cf_grid_to_csv(emp, dump_grid_to)
        rows.append(ReportRow(n_mc, m, f"mc_cf_distance{ONE_SIDED_SUFFIX}",
                              cf_distance(emp, limit), 0.0, 2e-2))
        pure = limit_cf_grid("gauss_cauchy", alphas, betas, b=b, c1=0.0, c2=0.0)
        emp_uv = empirical_cf(pts[:, [2, 4]], alphas, betas)
        rows.append(ReportRow(n_mc, m, f"uv_cf_distance{ONE_SIDED_SUFFIX}",
                              cf_distance(emp_uv, pure), 0.0, 2e-2))
        # displacement pair: joint empirical CF factorizes into marginals
        emp_ts = empirical_cf(pts[:, [3, 5]], alphas, betas)
        marg_t = empirical_cf(pts[:, [3, 5]], alphas, np.array([0.0]))
        marg_s = empirical_cf(pts[:, [3, 5]], np.array([0.0]), betas)
        prod = np.outer(marg_t.values[:, 0], marg_s.values[0, :])
        fact = float(np.max(np.abs(emp_ts.values - prod)))
        rows.append(ReportRow(n_mc, m, f"ts_factorization{ONE_SIDED_SUFFIX}",
                              fact, 0.0, 5.0 / math.sqrt(m)))
    cfg_dict = {"b": b, "c1": c1, "c2": c2, "n_list": list(n_list), "m": m,
                "k_max": k_max,
                "grid": [float(alphas[0]), float(alphas[-1]), len(alphas)]}
    return ExperimentReport("cf_convergence_cauchy", cfg_dict, rows, seed,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# negligible-term measurement
# ---------------------------------------------------------------------------

def second_term_exact(b: float, c1: float, c2: float, n: int,
                      alpha: float, beta: float) -> float:
    """Exact second term of the two-term step-CF expansion under the
    heavy-tailed scaling: 2 J_1(rho) cos(phi) (2 a_n/pi) I_1(a_n, c)."""
    a_n = math.pi * b / (2.0 * n)
    d1, d2 = c1 / math.sqrt(n), c2 / math.sqrt(n)
    c = math.hypot(alpha, beta)
    if c == 0.0:
        return 0.0
    rho, cosphi = charfn._rho_and_cos(alpha, beta, d1, d2)
    if rho == 0.0:
        return 0.0
    radial = (2.0 * a_n / math.pi) * integrals.cauchy_j_integral(1, a_n, c)
    return 2.0 * bessel_j(1, rho).value * cosphi * radial


def negligible_term_check(b: float, n_list: Sequence[int],
                          c1: float = 0.5, c2: float = 1.5,
                          alpha: float = 1.0, beta: float = 1.0) -> ExperimentReport:
    """Decay measurement of the exact second expansion term.

    Fits |term| ~ n^p by least squares on log-log data.  The term carries a
    logarithmic factor (the order-1 radial integral grows like log n under
    the a_n scaling), so the fitted exponent sits above -3/2; anything at or
    below -1.2 confirms that n times the term still vanishes.
    """
    if len(n_list) < 5:
        raise ValueError("need at least 5 n values for the regression")
    if max(n_list) < 100 * min(n_list):
        raise ValueError("n_list must span at least two decades")
    t0 = time.perf_counter()
    rows: list[ReportRow] = []
    terms = []
    for n in n_list:
        term = abs(second_term_exact(b, c1, c2, n, alpha, beta))
        terms.append(term)
        rows.append(ReportRow(n, None, "second_term_abs", term, 0.0, math.inf))
        rows.append(ReportRow(n, None, f"n_times_term{ONE_SIDED_SUFFIX}",
                              n * term, n_list[0] * terms[0], 0.0))
    slope = float(np.polyfit(np.log(np.asarray(n_list, dtype=float)),
                             np.log(np.asarray(terms)), 1)[0])
    rows.append(ReportRow(max(n_list), None, f"fitted_exponent{ONE_SIDED_SUFFIX}",
                          slope, -1.2, 0.0))
    zero_term = second_term_exact(b, c1, c2, max(n_list), 0.0, 0.0)
    rows.append(ReportRow(max(n_list), None, "term_at_origin", zero_term, 0.0, 0.0))
    cfg_dict = {"b": b, "c1": c1, "c2": c2, "n_list": list(n_list),
                "alpha": alpha, "beta": beta}
    return ExperimentReport("negligible_term_check", cfg_dict, rows, 0,
                            time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# identity campaign
# ---------------------------------------------------------------------------

_GRID4 = (0.5, 1.0, 2.0, 5.0)


def _identity_row(name: str, closed: float, quad, rel_tol: float,
                  n=None, flag: str = "") -> ReportRow:
    # the comparison cannot be tighter than what the oracle certifies about
    # itself: allow three times its reported absolute error estimate, plus a
    # 5e-12 absolute floor (the oracle's realistic float64 floor on slowly
    # decaying tails; a transcription error would miss by many orders more)
    tol = (rel_tol * max(abs(closed), abs(quad.value))
           + 3.0 * quad.abs_error_estimate + 5e-12)
    return ReportRow(n, None, name, closed, quad.value, tol, flag=flag)


def identity_campaign(tol: float = 1e-8, quad_tol: float = 1e-12) -> ExperimentReport:
    """Every closed form against the oscillatory quadrature oracle over the
    standard parameter grid; printed-formula discrepancies are flagged, and
    quadrature non-convergence marks the row instead of dropping it."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    t0 = time.perf_counter()
    rows: list[ReportRow] = []
    details: list[dict] = []

    def quad_or_flag(name, closed, kernel, order, flag="", detail=("", ""),
                     **params):
        try:
            q = integrals.oscillatory_integral(kernel, order, tol=quad_tol, **params)
            qval = q.value
        except integrals.QuadratureError as exc:
            rows.append(ReportRow(None, None, name, closed, exc.result.value,
                                  tol * abs(closed),
                                  flag="quadrature-nonconvergence"))
            qval = exc.result.value
        else:
            rows.append(_identity_row(name, closed, q, tol, flag=flag))
        details.append({
            "identity_id": name, "order": order, "a": detail[0], "c": detail[1],
            "closed_form": closed, "quadrature": qval,
            "abs_diff": abs(closed - qval),
            "rel_diff": abs(closed - qval) / max(abs(closed), abs(qval), 1e-300),
        })

    for nu in (0, 1, 2, 3):
        for al in _GRID4:
            for be in _GRID4:
                closed = integrals.laplace_bessel(nu, al, be)
                quad_or_flag(f"laplace_nu{nu}_a{al}_b{be}", closed,
                             "laplace", nu, detail=(al, be), alpha=al, beta=be)
    for al in _GRID4:
        for be in _GRID4:
            for ga in _GRID4:
                closed = integrals.shifted_laplace_j0(al, be, ga)
                quad_or_flag(f"shifted_a{al}_b{be}_g{ga}", closed,
                             "shifted_laplace", 0, detail=(al, be),
                             alpha=al, beta=be, gamma=ga)
    for nu in (0, 1, 2):
        for a in _GRID4:
            for bb in _GRID4:
                closed = integrals.algebraic_bessel_integral(nu, a, bb)
                quad_or_flag(f"algebraic_nu{nu}_a{a}_b{bb}", closed,
                             "algebraic", nu, detail=(a, bb), a=a, b=bb)
    # printed variant of the algebraic transform: off by a factor of two
    for nu in (0, 1, 2):
        closed = integrals.algebraic_bessel_integral_printed(nu, 1.0, 1.0)
        quad_or_flag(f"algebraic_printed_nu{nu}_a1_b1", closed, "algebraic", nu,
                     detail=(1.0, 1.0), a=1.0, b=1.0,
                     flag="printed-variant-discrepancy")
    # two-piece decomposition of the order-1 integral
    from .specfun import macdonald_k
    for a in _GRID4:
        for c in _GRID4:
            x = a * c
            closed = x * macdonald_k(1, x).value
            quad_or_flag(f"j1_u2_rational_a{a}_c{c}", closed, "rational_sq", 1,
                         detail=(a, c), x=x)
    for order in (1, 3, 5, 7, 9, 11, 0, 2, 4, 6, 8):
        for a in _GRID4:
            for c in _GRID4:
                closed = integrals.cauchy_j_integral(order, a, c)
                quad_or_flag(f"cauchy_k{order}_a{a}_c{c}", closed,
                             "cauchy", order, detail=(a, c), a=a, c=c)
    # printed Anger-function route at non-integer order: measured discrepancy
    for nu in (0.5, 1.5):
        for a in (0.5, 1.0, 2.0):
            closed = integrals.anger_route_integral(nu, a)
            quad_or_flag(f"anger_route_nu{nu}_a{a}", closed, "cauchy", nu,
                         detail=(a, 1.0), a=a, c=1.0,
                         flag="printed-variant-discrepancy")
    report = ExperimentReport("identity_campaign",
                              {"tol": tol, "grid": list(_GRID4)}, rows, 0,
                              time.perf_counter() - t0, details=details)
    return report


def identity_details_csv(report: ExperimentReport, path) -> None:
    """Per-identity detail table: closed form vs quadrature per point."""
    if not report.details:
        raise ValueError("report carries no identity details")
    with open(path, "w") as fh:
        fh.write("identity_id,order,a,c,closed_form,quadrature,abs_diff,rel_diff\n")
        for d in report.details:
            fh.write(f"{d['identity_id']},{d['order']},{d['a']},{d['c']},"
                     f"{d['closed_form']!r},{d['quadrature']!r},"
                     f"{d['abs_diff']!r},{d['rel_diff']!r}\n")


# ---------------------------------------------------------------------------
# CF oracle equivalence
# ---------------------------------------------------------------------------

def cf_oracle_equivalence(tol: float = 1e-7, grid_points: int = 9,
                          param_sets=None) -> ExperimentReport:
    """Series CFs against the direct nested-quadrature CF on a coarse grid."""
    t0 = time.perf_counter()
    if param_sets is None:
        param_sets = [
            StepParams(Regime.EXPONENTIAL, 2.0, 0.30, 0.60),
            StepParams(Regime.EXPONENTIAL, 5.0, 0.05, 0.10),
            StepParams(Regime.EXPONENTIAL, 10.0, 0.20, 0.05),
            StepParams(Regime.FOLDED_CAUCHY, 0.01, 0.02, 0.03),
            StepParams(Regime.FOLDED_CAUCHY, 0.10, 0.05, 0.15),
            StepParams(Regime.FOLDED_CAUCHY, 0.50, 0.10, 0.25),
        ]
    axes = np.linspace(-2.0, 2.0, grid_points)
    rows: list[ReportRow] = []
    for p in param_sets:
        worst = 0.0
        for a in axes:
            for b in axes:
                if p.regime is Regime.EXPONENTIAL:
                    s = charfn.step_cf_exponential(a, b, p, k_max=30)
                else:
                    s = charfn.step_cf_cauchy(a, b, p, k_max=9)
                q = charfn.step_cf_quadrature(a, b, p)
                worst = max(worst, abs(s - q))
        label = (f"cf_equiv_{p.regime.value}_s{p.rate_or_scale}"
                 f"_d{p.delta1}_{p.delta2}{ONE_SIDED_SUFFIX}")
        rows.append(ReportRow(None, None, label, worst, 0.0, tol))
    return ExperimentReport("cf_oracle_equivalence",
                            {"tol": tol, "grid_points": grid_points}, rows, 0,
                            time.perf_counter() - t0)
