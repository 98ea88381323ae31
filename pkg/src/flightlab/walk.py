"""Step construction, walk accumulation, and ensemble simulation.

A step is ((R + d1) cos th, (R + d2) sin th) with R drawn from the regime's
length law and th uniform on [0, 2*pi).  Under the scaling scheme the
per-step parameters are resolved from the pre-scaling configuration by
:func:`resolve_scaling`:

* exponential regime: rate mu_n = (mu/t) sqrt(n).  (With the printed
  exponent -1/2 the per-step second moment would grow with n instead of
  decaying like 1/n, contradicting both the stated variance identity and
  the limit, so the +1/2 reading is implemented.)
* heavy-tailed regime: folded-Cauchy scale a_n = pi b / (2 n).
* displacements d_i = C_i / sqrt(n) in both regimes.

Each walk owns one RNG stream (stream_index = walk number) and each step
consumes exactly two uniforms, length first, then angle.  Endpoints carry
the flight/displacement decomposition x = u + t_comp, y = v + s_comp, with
the identity exact in floating point because x and y are defined as those
sums.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distributions import (
    RngStream,
    exponential_icdf,
    folded_cauchy_icdf,
    uniform_block,
)


class Regime(enum.Enum):
    EXPONENTIAL = "exponential"
    FOLDED_CAUCHY = "cauchy"


# fixed bulk-generation block size (uniform count); constant so that ensemble
# statistics are bit-reproducible regardless of hardware or scheduling
_BLOCK_UNIFORMS = 2_000_000

# retained endpoints are capped to keep accidental multi-GB retention an error
DEFAULT_RETAIN_CAP = 2_000_000


@dataclass(frozen=True)
class WalkConfig:
    """Pre-scaling experiment parameters."""

    regime: Regime
    n: int
    ensemble_size: int
    seed: int
    t: Optional[float] = None
    mu: Optional[float] = None
    b: Optional[float] = None
    c1: float = 0.0
    c2: float = 0.0
    retain_cap: int = DEFAULT_RETAIN_CAP

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("c1 and c2 must be >= 0")
        if self.regime is Regime.EXPONENTIAL:
            if self.t is None or self.mu is None or self.t <= 0 or self.mu <= 0:
                raise ValueError("exponential regime requires t > 0 and mu > 0")
        elif self.regime is Regime.FOLDED_CAUCHY:
            if self.b is None or self.b <= 0:
                raise ValueError("cauchy regime requires b > 0")
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unknown regime {self.regime!r}")


@dataclass(frozen=True)
class StepParams:
    """Fully resolved per-step distribution parameters."""

    regime: Regime
    rate_or_scale: float
    delta1: float
    delta2: float

    def __post_init__(self) -> None:
        if self.rate_or_scale <= 0:
            raise ValueError("rate_or_scale must be > 0")
        if self.delta1 < 0 or self.delta2 < 0:
            raise ValueError("deltas must be >= 0")


@dataclass(frozen=True)
class WalkEndpoint:
    """Walk endpoint and its flight/displacement decomposition."""

    x: float
    y: float
    u: float
    t_comp: float
    v: float
    s_comp: float


@dataclass(frozen=True)
class EnsembleSummary:
    """Sample moments of an ensemble of walk endpoints."""

    count: int
    mean_x: float
    mean_y: float
    var_x: float        # unbiased; NaN when count < 2
    var_y: float
    cov_xy: float
    retained_endpoints: Optional[np.ndarray] = field(default=None, repr=False)
    # retained_endpoints columns: x, y, u, t_comp, v, s_comp

    def endpoint(self, i: int) -> WalkEndpoint:
        if self.retained_endpoints is None:
            raise ValueError("ensemble was run with retain=False")
        return WalkEndpoint(*self.retained_endpoints[i])


ENDPOINT_CSV_HEADER = "walk_index,x,y,u,t_comp,v,s_comp"


def resolve_scaling(config: WalkConfig) -> StepParams:
    """Resolve the scaled per-step parameters for ``config``."""
    n = config.n
    d1 = config.c1 / math.sqrt(n)
    d2 = config.c2 / math.sqrt(n)
    if config.regime is Regime.EXPONENTIAL:
        rate = (config.mu / config.t) * math.sqrt(n)
        return StepParams(Regime.EXPONENTIAL, rate, d1, d2)
    scale = math.pi * config.b / (2.0 * n)
    return StepParams(Regime.FOLDED_CAUCHY, scale, d1, d2)


def _lengths_from_uniforms(params: StepParams, u) -> np.ndarray:
    if params.regime is Regime.EXPONENTIAL:
        return exponential_icdf(params.rate_or_scale, u)
    return folded_cauchy_icdf(params.rate_or_scale, u)


def sample_step(params: StepParams, rng: RngStream) -> tuple[float, float]:
    """One step ((R+d1) cos th, (R+d2) sin th); consumes two uniforms."""
    u = rng.uniforms(2)
    r = float(_lengths_from_uniforms(params, u[0]))
    theta = 2.0 * math.pi * u[1]
    return ((r + params.delta1) * math.cos(theta),
            (r + params.delta2) * math.sin(theta))


def run_walk(params: StepParams, n: int, rng: RngStream) -> WalkEndpoint:
    """Accumulate ``n`` steps; endpoint components are defined through the
    flight/displacement decomposition so x == u + t_comp exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    u2 = rng.uniforms(2 * n)
    r = _lengths_from_uniforms(params, u2[0::2])
    theta = 2.0 * math.pi * u2[1::2]
    ct, st = np.cos(theta), np.sin(theta)
    # same pairwise reduction as the bulk ensemble path, so a single walk is
    # bit-identical to its row in an ensemble
    u_comp = float((r * ct).sum())
    v_comp = float((r * st).sum())
    t_comp = params.delta1 * float(ct.sum())
    s_comp = params.delta2 * float(st.sum())
    return WalkEndpoint(u_comp + t_comp, v_comp + s_comp,
                        u_comp, t_comp, v_comp, s_comp)


def run_ensemble(config: WalkConfig, retain: bool = False) -> EnsembleSummary:
    """Simulate ``config.ensemble_size`` independent walks.

    Walk m uses stream_index m of config.seed, so the result is a pure
    function of the configuration: re-running (in blocks of any scheduling)
    reproduces the summary bit for bit.  Moment sums are accumulated per
    fixed-size block and merged with exact (fsum) summation.
    """
    m = config.ensemble_size
    n = config.n
    params = resolve_scaling(config)
    if retain and m > config.retain_cap:
        raise ValueError(
            f"retain requested for {m} endpoints, above the cap {config.retain_cap}")

    walks_per_block = max(1, _BLOCK_UNIFORMS // (2 * n))
    sums: dict[str, list[float]] = {k: [] for k in
                                    ("x", "y", "xx", "yy", "xy")}
    retained = np.empty((m, 6)) if retain else None

    for start in range(0, m, walks_per_block):
        stop = min(m, start + walks_per_block)
        idx = np.arange(start, stop, dtype=np.uint64)
        u2 = uniform_block(config.seed, idx, 2 * n)
        r = _lengths_from_uniforms(params, u2[:, 0::2])
        theta = 2.0 * math.pi * u2[:, 1::2]
        ct, st = np.cos(theta), np.sin(theta)
        u_comp = (r * ct).sum(axis=1)
        v_comp = (r * st).sum(axis=1)
        t_comp = params.delta1 * ct.sum(axis=1)
        s_comp = params.delta2 * st.sum(axis=1)
        x = u_comp + t_comp
        y = v_comp + s_comp
        sums["x"].append(float(x.sum()))
        sums["y"].append(float(y.sum()))
        sums["xx"].append(float(np.dot(x, x)))
        sums["yy"].append(float(np.dot(y, y)))
        sums["xy"].append(float(np.dot(x, y)))
        if retain:
            retained[start:stop, 0] = x
            retained[start:stop, 1] = y
            retained[start:stop, 2] = u_comp
            retained[start:stop, 3] = t_comp
            retained[start:stop, 4] = v_comp
            retained[start:stop, 5] = s_comp

    sx, sy = math.fsum(sums["x"]), math.fsum(sums["y"])
    sxx, syy = math.fsum(sums["xx"]), math.fsum(sums["yy"])
    sxy = math.fsum(sums["xy"])
    mean_x, mean_y = sx / m, sy / m
    if m >= 2:
        var_x = max(0.0, (sxx - m * mean_x * mean_x) / (m - 1))
        var_y = max(0.0, (syy - m * mean_y * mean_y) / (m - 1))
        cov = (sxy - m * mean_x * mean_y) / (m - 1)
    else:
        var_x = var_y = cov = math.nan
    return EnsembleSummary(m, mean_x, mean_y, var_x, var_y, cov, retained)


def write_endpoints_csv(summary: EnsembleSummary, path) -> None:
    """Dump retained endpoints as CSV with the documented column order."""
    if summary.retained_endpoints is None:
        raise ValueError("ensemble was run with retain=False")
    with open(path, "w") as fh:
        fh.write(ENDPOINT_CSV_HEADER + "\n")
        for i, row in enumerate(summary.retained_endpoints):
            vals = ",".join(repr(float(v)) for v in row)
            fh.write(f"{i},{vals}\n")


def walk_trace(params: StepParams, n: int, rng: RngStream) -> np.ndarray:
    """Cumulative positions of a single walk, origin included: (n+1, 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    u2 = rng.uniforms(2 * n)
    r = _lengths_from_uniforms(params, u2[0::2])
    theta = 2.0 * math.pi * u2[1::2]
    dx = (r + params.delta1) * np.cos(theta)
    dy = (r + params.delta2) * np.sin(theta)
    out = np.zeros((n + 1, 2))
    out[1:, 0] = np.cumsum(dx)
    out[1:, 1] = np.cumsum(dy)
    return out
