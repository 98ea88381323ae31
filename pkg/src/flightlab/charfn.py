"""Per-step and limiting characteristic functions, and CF comparison tools.

The step law is symmetric under point reflection, so every exact step CF is
real; values are nevertheless carried as ``complex`` throughout (empirical
CFs have noise in both components).

Three routes to the per-step CF exist and are played against each other:

* ``step_cf_quadrature``   -- direct nested quadrature of the defining double
  integral: periodic trapezoid in the angle, zero-split oscillatory
  quadrature (shared-segment, vectorized) in the radius;
* ``step_cf_exponential``  -- closed Bessel-product series for the
  exponential length law, with Laplace-transform factors in closed form;
* ``step_cf_cauchy``       -- truncated Bessel-product expansion for the
  folded-Cauchy length law, each radial integral in closed form
  (``integrals.cauchy_j_integral``).

The cos(k,phi) factors of the series come from the Chebyshev recurrence on a
clamped cosine; arccos is never evaluated, so roundoff at the domain edge
cannot raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .integrals import cauchy_j_integral
from .specfun import bessel_j
from .walk import Regime, StepParams

DEFAULT_GRID_MIN = -2.0
DEFAULT_GRID_MAX = 2.0
DEFAULT_GRID_POINTS = 21


@dataclass(frozen=True)
class CFGrid:
    """Rectangular frequency grid with per-point complex CF values."""

    alphas: np.ndarray
    betas: np.ndarray
    values: np.ndarray              # shape (len(alphas), len(betas)), complex
    se_bound: Optional[float] = None

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.alphas), len(self.betas)):
            raise ValueError("values shape does not match the axes")

    def value_at(self, alpha: float, beta: float) -> complex:
        i = int(np.flatnonzero(np.isclose(self.alphas, alpha))[0])
        j = int(np.flatnonzero(np.isclose(self.betas, beta))[0])
        return complex(self.values[i, j])


def default_grid_axes(grid_min: float = DEFAULT_GRID_MIN,
                      grid_max: float = DEFAULT_GRID_MAX,
                      points: int = DEFAULT_GRID_POINTS) -> tuple[np.ndarray, np.ndarray]:
    ax = np.linspace(grid_min, grid_max, points)
    return ax, ax.copy()


def cf_grid_to_csv(grid: CFGrid, path) -> None:
    """Serialize row-major as ``alpha,beta,re,im``."""
    with open(path, "w") as fh:
        fh.write("alpha,beta,re,im\n")
        for i, a in enumerate(grid.alphas):
            for j, b in enumerate(grid.betas):
                v = grid.values[i, j]
                fh.write(f"{float(a)!r},{float(b)!r},"
                         f"{float(v.real)!r},{float(v.imag)!r}\n")


# ---------------------------------------------------------------------------
# direct quadrature route
# ---------------------------------------------------------------------------

_GLN, _GLW = np.polynomial.legendre.leggauss(24)


def _panel_matrix(edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss nodes/weights for a batch of panels given by consecutive edges."""
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    nodes = 0.5 * (b - a) * (_GLN[None, :] + 1.0) + a
    weights = 0.5 * (b - a) * np.repeat(_GLW[None, :], len(edges) - 1, axis=0)
    return nodes, weights


def _cauchy_radial_transforms(x: np.ndarray, n_segments: int = 48,
                              tol: float = 1e-11) -> tuple[np.ndarray, np.ndarray]:
    """C(x) = int cos(v)/(v^2+x^2) dv and S(x) = likewise with sin, vectorized
    over an array of x > 0.

    The first half-period is resolved with geometric panels down to min(x)
    (the integrand varies on scale x near the origin); subsequent segments
    are half-periods of the oscillation, and the alternating partial sums
    are accelerated by iterated averaging, one diagonal for the whole batch.
    """
    xmin = float(x.min())
    inner = [0.0]
    scale = max(min(xmin, 0.5), 1e-8)
    v = scale / 8.0
    while v < 0.5 * math.pi:
        inner.append(v)
        v *= 2.0
    inner.append(0.5 * math.pi)
    nodes, weights = _panel_matrix(np.asarray(inner))
    x2 = x[:, None, None] ** 2
    den = 1.0 / (nodes[None, :, :] ** 2 + x2)
    c_first = (weights[None] * np.cos(nodes)[None] * den).sum(axis=(1, 2))
    s_first = (weights[None] * np.sin(nodes)[None] * den).sum(axis=(1, 2))

    edges = 0.5 * math.pi + math.pi * np.arange(n_segments + 1)
    nodes, weights = _panel_matrix(edges)
    den = 1.0 / (nodes[None, :, :] ** 2 + x2)
    c_segs = (weights[None] * np.cos(nodes)[None] * den).sum(axis=2)
    s_segs = (weights[None] * np.sin(nodes)[None] * den).sum(axis=2)

    out = []
    for first, segs in ((c_first, c_segs), (s_first, s_segs)):
        # Partial sums along the segment axis form a smooth alternating
        # sequence after the first entry.  Iterated averaging converges
        # fast, but the deepest diagonals start mixing the (far-off) first
        # partial back in, so per row the diagonal with the smallest
        # correction is kept.
        t = first[:, None] + np.cumsum(segs, axis=1)
        best = t[:, -1].copy()
        best_err = np.abs(t[:, -1] - t[:, -2])
        while t.shape[1] > 1:
            prev_last = t[:, -1].copy()
            t = 0.5 * (t[:, :-1] + t[:, 1:])
            corr = np.abs(t[:, -1] - prev_last)
            upd = corr < best_err
            best[upd] = t[upd, -1]
            best_err[upd] = corr[upd]
        worst = float(best_err.max())
        if worst > tol:
            raise ArithmeticError(
                f"radial transform accelerated sum stalled at {worst:g}")
        out.append(best)
    return out[0], out[1]


def _exp_radial_cf(c: np.ndarray, mu: float) -> np.ndarray:
    """One-sided Fourier transform of the exponential density at frequencies
    ``c``: int_0^inf mu e^{-mu r} e^{i c r} dr by panel Gauss quadrature."""
    w = c / mu
    edges = np.arange(0.0, 46.0, 1.5)
    nodes, weights = _panel_matrix(edges)
    damp = weights * np.exp(-nodes)
    phase = w[:, None, None] * nodes[None, :, :]
    re = (damp[None] * np.cos(phase)).sum(axis=(1, 2))
    im = (damp[None] * np.sin(phase)).sum(axis=(1, 2))
    return re + 1j * im


def _cauchy_radial_cf(c: np.ndarray, a: float) -> np.ndarray:
    """One-sided Fourier transform of the folded-Cauchy density at nonzero
    frequencies ``c`` through the vectorized oscillatory transforms."""
    x = a * np.abs(c)
    cvals, svals = _cauchy_radial_transforms(x)
    re = (2.0 * a / math.pi) * np.abs(c) * cvals
    im = (2.0 * a / math.pi) * c * svals
    return re + 1j * im


def _graded_panels(lo: float, hi: float, levels: int = 14) -> np.ndarray:
    """Panel edges on [lo, hi] geometrically refined toward both endpoints."""
    width = hi - lo
    left = lo + width * 0.5 * 2.0 ** -np.arange(levels, -1, -1.0)
    right = hi - width * 0.5 * 2.0 ** -np.arange(0, levels + 1, 1.0)
    return np.concatenate([[lo], left, right[1:], [hi]])


def step_cf_quadrature(alpha: float, beta: float, params: StepParams,
                       n_theta: int = 256, tol: float = 1e-9) -> complex:
    """Per-step CF by nested quadrature of its defining double integral:
    an angle integral of the radial one-sided Fourier transform at
    frequency c(theta) = alpha cos(theta) + beta sin(theta).

    Exponential regime: the integrand is entire in theta, so the N-point
    periodic trapezoid is spectrally accurate.  Heavy-tailed regime: the
    radial transform has a |c| kink (and a c log|c| imaginary part) where
    c(theta) changes sign, which would degrade the trapezoid to low order;
    the angle integral is instead split at the two sign changes and each
    smooth piece integrated on a panel mesh graded toward its endpoints.
    """
    if alpha == 0.0 and beta == 0.0:
        return 1.0 + 0.0j

    d1, d2 = params.delta1, params.delta2

    if params.regime is Regime.EXPONENTIAL:
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        ct, st = np.cos(theta), np.sin(theta)
        c = alpha * ct + beta * st
        pref = np.exp(1j * (alpha * d1 * ct + beta * d2 * st))
        psi = np.ones(n_theta, dtype=complex)
        nz = np.abs(c) > 1e-14
        psi[nz] = _exp_radial_cf(c[nz], params.rate_or_scale)
        return complex((pref * psi).mean())

    # folded-Cauchy regime: c(theta) = cmax cos(theta - phi0) vanishes at
    # phi0 +- pi/2; integrate the two smooth pieces separately
    a = params.rate_or_scale
    phi0 = math.atan2(beta, alpha)
    total = 0.0 + 0.0j
    for lo, hi in ((phi0 - 0.5 * math.pi, phi0 + 0.5 * math.pi),
                   (phi0 + 0.5 * math.pi, phi0 + 1.5 * math.pi)):
        edges = _graded_panels(lo, hi)
        nodes, weights = _panel_matrix(edges)
        th = nodes.ravel()
        w = weights.ravel()
        ct, st = np.cos(th), np.sin(th)
        c = alpha * ct + beta * st
        pref = np.exp(1j * (alpha * d1 * ct + beta * d2 * st))
        psi = np.ones(th.shape, dtype=complex)
        nz = np.abs(c) > 1e-13
        psi[nz] = _cauchy_radial_cf(c[nz], a)
        total += complex(np.sum(w * pref * psi))
    val = total / (2.0 * math.pi)
    if abs(val.imag) > max(tol, 1e-9):
        raise ArithmeticError(
            f"quadrature CF imaginary part {val.imag:g} exceeds tolerance; "
            "the radial quadrature did not converge")
    return val


# ---------------------------------------------------------------------------
# series routes
# ---------------------------------------------------------------------------

def _rho_and_cos(alpha: float, beta: float, d1: float, d2: float) -> tuple[float, float]:
    rho = math.hypot(alpha * d1, beta * d2)
    c = math.hypot(alpha, beta)
    if rho == 0.0 or c == 0.0:
        return rho, 1.0
    cosphi = -(alpha * alpha * d1 + beta * beta * d2) / (c * rho)
    return rho, min(1.0, max(-1.0, cosphi))


def _factorial_tail(z: float, k: int) -> float:
    """Bound on sum_{j>k} z^j/j! by its first term times a geometric factor."""
    if z <= 0:
        return 0.0
    lead = math.exp(min(700.0, (k + 1) * math.log(z) - math.lgamma(k + 2)))
    q = z / (k + 2)
    return lead / (1.0 - q) if q < 1.0 else math.exp(z)


def step_cf_exponential(alpha: float, beta: float, params: StepParams,
                        k_max: int = 30, return_bound: bool = False):
    """Closed series for the per-step CF in the exponential regime.

    Term k couples J_k at the displacement radius with the k-th Laplace
    transform of J_k at the frequency radius; cos(k phi) factors come from
    the Chebyshev recurrence.  The attached bound covers the truncated tail
    via |J_k(rho)| <= (rho/2)^k / k!.
    """
    if params.regime is not Regime.EXPONENTIAL:
        raise ValueError("params are not in the exponential regime")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if alpha == 0.0 and beta == 0.0:
        return (1.0 + 0.0j, 0.0) if return_bound else 1.0 + 0.0j
    mu = params.rate_or_scale
    c = math.hypot(alpha, beta)
    s = math.hypot(mu, c)
    rho, cosphi = _rho_and_cos(alpha, beta, params.delta1, params.delta2)
    total = bessel_j(0, rho).value * mu / s
    bound = 0.0
    if rho > 0.0:
        lam = (s - mu) / c          # in (0, 1)
        t_prev, t_cur = 1.0, cosphi
        lam_pow = 1.0
        for k in range(1, k_max + 1):
            lam_pow *= lam
            total += 2.0 * bessel_j(k, rho).value * t_cur * mu * lam_pow / s
            t_prev, t_cur = t_cur, 2.0 * cosphi * t_cur - t_prev
        bound = 2.0 * (mu / s) * _factorial_tail(0.5 * rho * lam, k_max)
    value = complex(total)
    return (value, bound) if return_bound else value


def step_cf_cauchy(alpha: float, beta: float, params: StepParams,
                   k_max: int = 1, return_bound: bool = False):
    """Truncated Bessel-product expansion of the per-step CF in the
    folded-Cauchy regime; all radial integrals in closed form.

    k_max = 1 keeps the two explicitly controlled terms; larger k adds
    closed-form corrections for error assessment.  Consecutive closed forms
    exist through order 9 (the printed even-order tables stop at 8), so
    k_max above 9 is rejected.
    """
    if params.regime is not Regime.FOLDED_CAUCHY:
        raise ValueError("params are not in the folded-Cauchy regime")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if k_max > 9:
        raise ValueError("closed forms cover consecutive orders 0..9 only")
    if alpha == 0.0 and beta == 0.0:
        return (1.0 + 0.0j, 0.0) if return_bound else 1.0 + 0.0j
    a = params.rate_or_scale
    c = math.hypot(alpha, beta)
    rho, cosphi = _rho_and_cos(alpha, beta, params.delta1, params.delta2)
    total = bessel_j(0, rho).value * (2.0 * a / math.pi) * cauchy_j_integral(0, a, c)
    if rho > 0.0:
        t_prev, t_cur = 1.0, cosphi
        for k in range(1, k_max + 1):
            radial = (2.0 * a / math.pi) * cauchy_j_integral(k, a, c)
            total += 2.0 * bessel_j(k, rho).value * t_cur * radial
            t_prev, t_cur = t_cur, 2.0 * cosphi * t_cur - t_prev
    # |E J_k(cR)| <= 1, so the tail is controlled by the J_k(rho) factors
    bound = 2.0 * _factorial_tail(0.5 * rho, k_max) if rho > 0 else 0.0
    value = complex(total)
    return (value, bound) if return_bound else value


# ---------------------------------------------------------------------------
# limit laws
# ---------------------------------------------------------------------------

def gaussian_variances(t: float, mu: float, c1: float, c2: float) -> tuple[float, float]:
    """Limiting variances (t^2/mu^2 + C_i t/mu + C_i^2/2) of the two components."""
    if t <= 0 or mu <= 0:
        raise ValueError("t and mu must be > 0")
    base = t * t / (mu * mu)
    return (base + c1 * t / mu + 0.5 * c1 * c1,
            base + c2 * t / mu + 0.5 * c2 * c2)


def limit_cf_gaussian(alpha: float, beta: float, t: float, mu: float,
                      c1: float, c2: float) -> complex:
    """CF of the limiting zero-mean Gaussian in the exponential regime."""
    vx, vy = gaussian_variances(t, mu, c1, c2)
    return complex(math.exp(-0.5 * (alpha * alpha * vx + beta * beta * vy)))


def limit_cf_gaussian_linearized(alpha: float, beta: float, t: float, mu: float,
                                 c1: float, c2: float) -> complex:
    """Comparison variant without the C_i^2/2 variance contributions (the
    linearized-displacement approximation)."""
    if t <= 0 or mu <= 0:
        raise ValueError("t and mu must be > 0")
    base = t * t / (mu * mu)
    vx = base + c1 * t / mu
    vy = base + c2 * t / mu
    return complex(math.exp(-0.5 * (alpha * alpha * vx + beta * beta * vy)))


def limit_cf_gauss_cauchy(alpha: float, beta: float, b: float,
                          c1: float, c2: float) -> complex:
    """CF of the Gaussian (*) circular-Cauchy convolution limit:
    exp(-C1^2 a^2/2 - C2^2 b^2/2) * exp(-b sqrt(a^2+b^2))."""
    if b <= 0:
        raise ValueError("b must be > 0")
    # component variances are C_i^2/2, so the Gaussian exponent is C_i^2 w^2/4
    gauss = math.exp(-0.25 * (c1 * c1 * alpha * alpha + c2 * c2 * beta * beta))
    heavy = math.exp(-b * math.hypot(alpha, beta))
    return complex(gauss * heavy)


# ---------------------------------------------------------------------------
# empirical CF and distances
# ---------------------------------------------------------------------------

def empirical_cf(points, alphas, betas) -> CFGrid:
    """Empirical CF (1/M) sum_m exp(i(alpha x_m + beta y_m)) on a grid,
    with the 1/sqrt(M) standard-error bound attached.

    exp(i(ax+by)) factorizes per sample, so the grid is one complex matrix
    product between the per-sample phase factors of the two axes.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] < 2 or len(pts) == 0:
        raise ValueError("points must be a non-empty (M, 2) array")
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    m = len(pts)
    values = np.zeros((len(alphas), len(betas)), dtype=complex)
    chunk = 200_000
    for start in range(0, m, chunk):
        xs, ys = x[start:start + chunk], y[start:start + chunk]
        ea = np.exp(1j * np.outer(xs, alphas))
        eb = np.exp(1j * np.outer(ys, betas))
        values += ea.T @ eb
    values /= m
    return CFGrid(alphas, betas, values, se_bound=1.0 / math.sqrt(m))


def cf_distance(f: CFGrid, g: CFGrid) -> float:
    """Max over grid points of |f - g| (complex modulus); grids must match."""
    if (len(f.alphas) != len(g.alphas) or len(f.betas) != len(g.betas)
            or not np.array_equal(f.alphas, g.alphas)
            or not np.array_equal(f.betas, g.betas)):
        raise ValueError("grids do not match")
    return float(np.max(np.abs(f.values - g.values)))


def analytic_cf_grid(params: StepParams, alphas, betas, k_max: int = 30) -> CFGrid:
    """Per-step series CF evaluated over a grid."""
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    values = np.empty((len(alphas), len(betas)), dtype=complex)
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            if params.regime is Regime.EXPONENTIAL:
                values[i, j] = step_cf_exponential(a, b, params, k_max=k_max)
            else:
                values[i, j] = step_cf_cauchy(a, b, params, k_max=min(k_max, 11))
    return CFGrid(alphas, betas, values)


def cf_power(grid: CFGrid, n: int) -> CFGrid:
    """[phi]^n per grid point via n log(phi) on the principal branch.

    The step CFs stay near the positive real axis on the default grid;
    that is asserted so a silent branch crossing cannot corrupt the power.
    """
    vals = grid.values
    if np.any(vals.real <= 0.0):
        raise ArithmeticError("step CF left the right half-plane; n log phi "
                              "is not safe on this grid")
    powered = np.exp(n * np.log(vals))
    return CFGrid(grid.alphas, grid.betas, powered)


def limit_cf_grid(kind: str, alphas, betas, **kw) -> CFGrid:
    """Grid evaluation of one of the limit CFs: kind in
    {"gaussian", "gaussian_linearized", "gauss_cauchy"}."""
    fns = {"gaussian": limit_cf_gaussian,
           "gaussian_linearized": limit_cf_gaussian_linearized,
           "gauss_cauchy": limit_cf_gauss_cauchy}
    fn = fns[kind]
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    values = np.empty((len(alphas), len(betas)), dtype=complex)
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            values[i, j] = fn(a, b, **kw)
    return CFGrid(alphas, betas, values)
