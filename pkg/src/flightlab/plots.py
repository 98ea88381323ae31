"""Figure rendering for reports, CF grids, and walk traces.

Every renderer takes the in-memory artifact, writes one PNG next to the
delimited output, and returns the path.  Styling is kept minimal and local
(no global rcParams mutation beyond the Agg backend).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 110,
    "savefig.dpi": 150,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.6,
    "font.size": 10,
}


def plot_convergence(report, path) -> str:
    """log-log distance-vs-n curves for every *_distance metric family."""
    series: dict[str, list[tuple[int, float]]] = {}
    for r in report.rows:
        if "distance" in r.metric and r.n is not None and math.isfinite(r.observed):
            series.setdefault(r.metric.split(":")[0], []).append((r.n, r.observed))
    series = {k: v for k, v in series.items() if len(v) >= 2}
    if not series:
        raise ValueError("report holds no multi-n distance track to plot")
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for name, pts in sorted(series.items()):
            pts = sorted(pts)
            ax.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label=name)
        ax.set_xlabel("steps per walk n")
        ax.set_ylabel("max CF distance on grid")
        ax.set_title(report.experiment_id)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)


def plot_report_rows(report, path) -> str:
    """Deviation-vs-tolerance overview, one marker per verdict row."""
    rows = [r for r in report.rows if math.isfinite(r.tolerance) and r.tolerance > 0]
    if not rows:
        rows = report.rows
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(7.0, 4.0))
        xs = np.arange(len(rows))
        devs = [abs(r.observed - r.expected) for r in rows]
        tols = [r.tolerance if math.isfinite(r.tolerance) else np.nan for r in rows]
        colors = ["tab:red" if (not r.passed and not r.flag)
                  else ("tab:orange" if r.flag else "tab:blue") for r in rows]
        ax.scatter(xs, np.maximum(devs, 1e-18), c=colors, s=12)
        ax.plot(xs, np.maximum(tols, 1e-18), "k--", lw=1, label="tolerance")
        ax.set_yscale("log")
        ax.set_xlabel("row")
        ax.set_ylabel("|observed - expected|")
        ax.set_title(f"{report.experiment_id}: {report.pass_count} pass, "
                     f"{report.fail_count} fail, {report.flagged_count} flagged")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)


def plot_cf_slice(alphas, re_empirical, re_limit, path, label="empirical") -> str:
    """Real-part CF slice along beta = 0."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(alphas, re_limit, "-", label="limit")
        ax.plot(alphas, re_empirical, "o", ms=3.5, label=label)
        ax.set_xlabel(r"$\alpha$")
        ax.set_ylabel(r"Re $\varphi(\alpha, 0)$")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)


def plot_walk_trace(trace: np.ndarray, path) -> str:
    """Sample path of a single walk (positions, origin included)."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 5.0))
        ax.plot(trace[:, 0], trace[:, 1], "-", lw=0.9)
        ax.plot([trace[0, 0]], [trace[0, 1]], "go", label="start")
        ax.plot([trace[-1, 0]], [trace[-1, 1]], "rs", label="end")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)


def plot_endpoint_scatter(points: np.ndarray, path, max_points: int = 20000) -> str:
    """Endpoint cloud of an ensemble (subsampled for readability)."""
    pts = points[:max_points]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 5.0))
        ax.plot(pts[:, 0], pts[:, 1], ".", ms=1.0, alpha=0.4)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_aspect("equal", adjustable="datalim")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)
