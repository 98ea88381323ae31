"""Bessel-integral closed forms and the oscillatory quadrature oracle.

The closed forms cover

* the Laplace transform of J_nu                      (``laplace_bessel``)
* the shifted transform of J_0(beta sqrt(x^2+2gx))   (``shifted_laplace_j0``)
* the algebraic-weight transform, Hankel-type        (``algebraic_bessel_integral``)
* int_0^inf J_k(c r)/(r^2+a^2) dr for k = 0..11      (``cauchy_j_integral``)
* the Anger-function route to the same integral at
  non-integer order                                  (``anger_route_integral``)

``cauchy_j_integral`` is table-driven: the printed coefficient tables are
stored exactly (``fractions.Fraction``) and reduced symbolically before any
floating evaluation.  Odd orders pair K_m with the negative powers of its
own expansion at 0 (see ``specfun.macdonald_k_regular``), even orders are
rewritten through the Struve recurrence

    L_{v-1}(x) - L_{v+1}(x) = (2v/x) L_v(x) + (x/2)^v / (sqrt(pi) Gamma(v+3/2))

onto I_v - L_v pairs (``specfun.i_minus_l``) plus elementary terms.  Both
rewrites are exact coefficient arithmetic; any mismatch between a printed
table and the cancellation structure would survive as an explicit residual
term and show up against the quadrature oracle instead of being absorbed.

The oracle, ``oscillatory_integral``, splits [0, inf) at the zeros of the
oscillating factor, integrates each segment by an adaptive Gauss pair, and
accelerates the alternating sequence of partial sums by iterated averaging.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import jv, jvp

from . import specfun
from .specfun import bessel_j_real_order, i_minus_l, macdonald_k_regular

_EPS = 2.2204460492503131e-16


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    segments_used: int


class QuadratureError(RuntimeError):
    """Raised when the oscillatory scheme cannot reach the requested
    tolerance; carries the best available result."""

    def __init__(self, message: str, result: QuadratureResult):
        super().__init__(message)
        self.result = result


# ---------------------------------------------------------------------------
# oscillatory quadrature engine
# ---------------------------------------------------------------------------

_GL24 = np.polynomial.legendre.leggauss(24)
_GL48 = np.polynomial.legendre.leggauss(48)


def bessel_zeros(nu: float, count: int) -> np.ndarray:
    """First ``count`` positive zeros of J_nu: McMahon expansion refined by
    Newton steps (J_nu' from scipy)."""
    s = np.arange(1, count + 1, dtype=float)
    beta = (s + 0.5 * nu - 0.25) * math.pi
    mu = 4.0 * nu * nu
    z = beta - (mu - 1.0) / (8.0 * beta) \
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta) ** 3)
    z = np.maximum(z, 0.5)
    for _ in range(3):
        z = z - jv(nu, z) / jvp(nu, z)
    return z


def _panel(f, a: float, b: float, tol: float, depth: int = 0) -> tuple[float, float]:
    """Adaptive Gauss pair (24/48 nodes) on [a, b]."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x24 = mid + half * _GL24[0]
    x48 = mid + half * _GL48[0]
    v24 = half * float(np.dot(_GL24[1], f(x24)))
    v48 = half * float(np.dot(_GL48[1], f(x48)))
    err = abs(v48 - v24)
    if err <= max(tol, 64 * _EPS * abs(v48)) or depth >= 48:
        return v48, err
    left = _panel(f, a, mid, 0.5 * tol, depth + 1)
    right = _panel(f, mid, b, 0.5 * tol, depth + 1)
    return left[0] + right[0], left[1] + right[1]


def _averaged_tail(partials: list[float]) -> tuple[float, float]:
    """Iterated averaging of the partial-sum sequence.

    Candidate estimates are the last entry of each averaging level.  For an
    alternating tail the corrections shrink with depth; for an already
    convergent (damped) tail deeper levels start mixing in early, far-off
    partial sums and the corrections grow again.  The level with the
    smallest correction is therefore selected instead of the deepest one.
    """
    t = np.asarray(partials, dtype=float)
    if len(t) == 1:
        return float(t[0]), abs(float(t[0]))
    best_val = float(t[-1])
    best_err = abs(float(t[-1] - t[-2]))
    prev = float(t[-1])
    while len(t) > 1:
        t = 0.5 * (t[:-1] + t[1:])
        cur = float(t[-1])
        corr = abs(cur - prev)
        if corr < best_err:
            best_val, best_err = cur, corr
        prev = cur
    return best_val, best_err


def _integrate_with_breaks(f, breaks, tol: float, max_segments: int,
                           envelope_bound=None) -> QuadratureResult:
    """Generic driver: integrate f over consecutive ``breaks`` and accelerate.

    Convergence requires the accelerated estimate to be stable under adding
    one more segment, not just a small averaging correction: pre-asymptotic
    partial sums can produce accidentally tiny corrections.
    """
    partials: list[float] = []
    total = 0.0
    seg_err = 0.0
    prev_est = math.inf
    for i, (a, b) in enumerate(zip(breaks[:-1], breaks[1:])):
        v, e = _panel(f, float(a), float(b), tol / 64.0)
        total += v
        seg_err += e
        partials.append(total)
        if envelope_bound is not None and envelope_bound(float(b)) < 0.1 * tol:
            # the remaining tail is bounded by the envelope: the plain sum is
            # already converged, no acceleration needed
            return QuadratureResult(total, seg_err + envelope_bound(float(b)), i + 1)
        if i >= 9:
            est, acc_err = _averaged_tail(partials)
            err = acc_err + abs(est - prev_est) + seg_err
            prev_est = est
            if err <= tol:
                return QuadratureResult(est, err, i + 1)
    est, acc_err = _averaged_tail(partials)
    best = QuadratureResult(est, acc_err + abs(est - prev_est) + seg_err,
                            len(partials))
    if best.abs_error_estimate > tol:
        raise QuadratureError(
            f"oscillatory integral did not reach tol={tol:g}; "
            f"achieved {best.abs_error_estimate:g} with {best.segments_used} segments",
            best)
    return best


def oscillatory_integral(kernel: str, order: int = 0, *, tol: float = 1e-10,
                         max_segments: int = 260, **params) -> QuadratureResult:
    """Numerically integrate one of the oscillatory kernels over [0, inf).

    kernel:
      "cauchy"          J_order(c r) / (r^2 + a^2)          params: a, c
      "bare"            J_order(c r)                        params: c
      "laplace"         e^{-alpha r} J_order(beta r)        params: alpha, beta
      "shifted_laplace" e^{-alpha r} J_0(beta sqrt(r^2+2 gamma r))
                                                            params: alpha, beta, gamma
      "algebraic"       r^{order+1} (r^2+a^2)^{-order-3/2} J_order(b r)
                                                            params: a, b
      "rational_sq"     J_order(u) u^2 / (u^2 + x^2)        params: x
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    nu = float(order)
    if kernel == "cauchy":
        a, c = params["a"], params["c"]
        if a <= 0 or c <= 0:
            raise ValueError("cauchy kernel requires a > 0 and c > 0")
        zeros = bessel_zeros(nu, max_segments) / c
        f = lambda r: jv(nu, c * r) / (r * r + a * a)
        breaks = np.concatenate([[0.0], zeros])
        return _integrate_with_breaks(f, breaks, tol, max_segments)
    if kernel == "bare":
        c = params["c"]
        zeros = bessel_zeros(nu, max_segments) / c
        f = lambda r: jv(nu, c * r)
        return _integrate_with_breaks(f, np.concatenate([[0.0], zeros]), tol,
                                      max_segments)
    if kernel == "laplace":
        alpha, beta = params["alpha"], params["beta"]
        if alpha <= 0 or beta <= 0:
            raise ValueError("laplace kernel requires alpha > 0 and beta > 0")
        zeros = bessel_zeros(nu, max_segments) / beta
        f = lambda r: np.exp(-alpha * r) * jv(nu, beta * r)
        env = lambda r: math.exp(-alpha * r) / alpha
        return _integrate_with_breaks(f, np.concatenate([[0.0], zeros]), tol,
                                      max_segments, envelope_bound=env)
    if kernel == "shifted_laplace":
        alpha, beta, gamma = params["alpha"], params["beta"], params["gamma"]
        if alpha <= 0 or beta <= 0 or gamma < 0:
            raise ValueError("requires alpha > 0, beta > 0, gamma >= 0")
        j0z = bessel_zeros(0.0, max_segments) / beta
        zeros = -gamma + np.sqrt(gamma * gamma + j0z * j0z)
        f = lambda r: np.exp(-alpha * r) * jv(0, beta * np.sqrt(r * r + 2 * gamma * r))
        env = lambda r: math.exp(-alpha * r) / alpha
        return _integrate_with_breaks(f, np.concatenate([[0.0], zeros]), tol,
                                      max_segments, envelope_bound=env)
    if kernel == "algebraic":
        a, b = params["a"], params["b"]
        if a <= 0 or b <= 0:
            raise ValueError("algebraic kernel requires a > 0 and b > 0")
        zeros = bessel_zeros(nu, max_segments) / b
        f = lambda r: r ** (nu + 1) * (r * r + a * a) ** (-nu - 1.5) * jv(nu, b * r)
        return _integrate_with_breaks(f, np.concatenate([[0.0], zeros]), tol,
                                      max_segments)
    if kernel == "rational_sq":
        x = params["x"]
        if x <= 0:
            raise ValueError("rational_sq kernel requires x > 0")
        zeros = bessel_zeros(nu, max_segments)
        f = lambda u: jv(nu, u) * u * u / (u * u + x * x)
        return _integrate_with_breaks(f, np.concatenate([[0.0], zeros]), tol,
                                      max_segments)
    raise ValueError(f"unknown kernel {kernel!r}")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def laplace_bessel(nu: int, alpha: float, beta: float) -> float:
    """int_0^inf e^{-alpha x} J_nu(beta x) dx
       = [sqrt(alpha^2+beta^2) - alpha]^nu / (beta^nu sqrt(alpha^2+beta^2))."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be > 0")
    s = math.hypot(alpha, beta)
    return (s - alpha) ** nu / (beta ** nu * s)


def shifted_laplace_j0(alpha: float, beta: float, gamma: float) -> float:
    """int_0^inf e^{-alpha x} J_0(beta sqrt(x^2 + 2 gamma x)) dx
       = e^{gamma (alpha - sqrt(alpha^2+beta^2))} / sqrt(alpha^2+beta^2)."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    s = math.hypot(alpha, beta)
    return math.exp(gamma * (alpha - s)) / s


def algebraic_bessel_integral(nu: int, a: float, b: float) -> float:
    """int_0^inf x^{nu+1} (x^2+a^2)^{-nu-3/2} J_nu(bx) dx
       = b^nu sqrt(pi) e^{-ab} / (2^{nu+1} a Gamma(nu+3/2)).

    The source table prints 2^nu in the denominator; that constant fails
    both direct quadrature and the nu=0 normalization (the transform of the
    circular Cauchy density must equal e^{-ab}/a at b -> 0 times a), so the
    2^{nu+1} form is implemented and the printed variant is reported as a
    flagged discrepancy by the identity campaign.
    """
    if nu < 0:
        raise ValueError("nu must be >= 0")
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be > 0")
    return (b ** nu * math.sqrt(math.pi) * math.exp(-a * b)
            / (2.0 ** (nu + 1) * a * math.gamma(nu + 1.5)))


def algebraic_bessel_integral_printed(nu: int, a: float, b: float) -> float:
    """The printed-table variant of ``algebraic_bessel_integral`` (2^nu
    denominator), kept so the discrepancy can be measured and reported."""
    return 2.0 * algebraic_bessel_integral(nu, a, b)


# --- table-driven evaluator for int J_k(cr)/(r^2+a^2) dr, k = 0..11 ---------

# Printed rational parts of the odd-order lines, as coefficients of x^power
# in H_m(x) = a * integral, x = a c.
_ODD_RATIONAL: dict[int, dict[int, Fraction]] = {
    1: {-1: Fraction(1)},
    3: {-1: Fraction(1), -3: Fraction(-8)},
    5: {-1: Fraction(1), -3: Fraction(-24), -5: Fraction(384)},
    7: {-1: Fraction(1), -3: Fraction(-48), -5: Fraction(1920),
        -7: Fraction(-46080)},
    9: {-1: Fraction(1), -3: Fraction(-80), -5: Fraction(5760),
        -7: Fraction(-322560), -9: Fraction(10321920)},
    11: {-1: Fraction(1), -3: Fraction(-120), -5: Fraction(13440),
         -7: Fraction(-1290240), -9: Fraction(92897280),
         -11: Fraction(-3715891200)},
}
# sign of the K_m(x) term in each printed odd line
_ODD_K_SIGN = {1: -1, 3: 1, 5: -1, 7: 1, 9: -1, 11: 1}

# Printed even-order lines in H(x) = a * integral form.  Each entry:
# poly: {power: Fraction} without a pi factor;
# bessel_i / struve terms: (order, {power: Fraction}) with an implicit pi.
_EVEN_PRINTED = {
    0: {"poly": {}, "i": (0, {0: Fraction(1, 2)}),
        "l": [(0, {0: Fraction(-1, 2)})]},
    2: {"poly": {1: Fraction(1, 3)}, "i": (2, {0: Fraction(-1, 2)}),
        "l": [(2, {0: Fraction(1, 2)})]},
    4: {"poly": {1: Fraction(1, 15)}, "i": (4, {0: Fraction(1, 2)}),
        "l": [(2, {0: Fraction(-1, 2)}), (3, {-1: Fraction(3)})]},
    6: {"poly": {3: Fraction(1, 105), 1: Fraction(1, 35)},
        "i": (6, {0: Fraction(-1, 2)}),
        "l": [(4, {0: Fraction(1, 2)}), (3, {-1: Fraction(-5)}),
              (4, {-2: Fraction(40)})]},
    8: {"poly": {3: Fraction(1, 63), 1: Fraction(1, 63)},
        "i": (8, {0: Fraction(1, 2)}),
        "l": [(4, {0: Fraction(-1, 2)}), (5, {-1: Fraction(12)}),
              (4, {-2: Fraction(-84)}), (5, {-3: Fraction(840)})]},
}


def _lp_add(dst: dict[int, Fraction], src: dict[int, Fraction],
            factor: Fraction = Fraction(1), shift: int = 0) -> None:
    for p, co in src.items():
        q = p + shift
        dst[q] = dst.get(q, Fraction(0)) + co * factor
        if dst[q] == 0:
            del dst[q]


def _reduce_even_line(entry) -> dict:
    """Rewrite a printed even line as poly + pi*(D-terms + h-terms + residual L).

    I_v is replaced by (I_v - L_v) + L_v exactly; then every Struve order
    above 1 is eliminated through the recurrence, which only produces exact
    rational coefficients and elementary (x/2)^v terms.  For a correctly
    printed line the residual L coefficients cancel to zero.
    """
    iorder, icoeff = entry["i"]
    dterms: list[tuple[int, dict[int, Fraction]]] = [(iorder, dict(icoeff))]
    lterms: dict[int, dict[int, Fraction]] = {}
    _lp_add(lterms.setdefault(iorder, {}), icoeff)
    for order, coeff in entry["l"]:
        _lp_add(lterms.setdefault(order, {}), coeff)
    hterms: dict[int, dict[int, Fraction]] = {}
    while True:
        high = max((o for o, c in lterms.items() if c and o >= 2), default=None)
        if high is None:
            break
        coeff = lterms.pop(high)
        v = high - 1                      # L_{v+1} = L_{v-1} - (2v/x) L_v - h_v
        _lp_add(lterms.setdefault(v - 1, {}), coeff)
        _lp_add(lterms.setdefault(v, {}), coeff, Fraction(-2 * v), shift=-1)
        _lp_add(hterms.setdefault(v, {}), coeff, Fraction(-1))
    residual = {o: c for o, c in lterms.items() if c}
    return {"poly": entry["poly"], "d": dterms, "h": hterms, "residual": residual}


_EVEN_REDUCED = {k: _reduce_even_line(v) for k, v in _EVEN_PRINTED.items()}

# residual coefficients of the odd lines: printed rational part plus the
# K-sign times the exact negative-power expansion coefficients of K_m
_ODD_RESIDUAL: dict[int, dict[int, Fraction]] = {}
for _m, _q in _ODD_RATIONAL.items():
    _res: dict[int, Fraction] = dict(_q)
    _lp_add(_res, specfun.macdonald_laurent_coeffs(_m), Fraction(_ODD_K_SIGN[_m]))
    _ODD_RESIDUAL[_m] = {p: c for p, c in _res.items() if c}


def _lp_eval(poly: dict[int, Fraction], x: float) -> float:
    if not poly:
        return 0.0
    return math.fsum(float(co) * x ** p for p, co in poly.items())


def _struve_h_term(order: int, x: float) -> float:
    """Inhomogeneous term (x/2)^order / (sqrt(pi) Gamma(order+3/2)) of the
    Struve recurrence."""
    return (0.5 * x) ** order / (math.sqrt(math.pi) * math.gamma(order + 1.5))


def cauchy_j_integral(order: int, a: float, c: float) -> float:
    """Closed form of int_0^inf J_order(c r) / (r^2 + a^2) dr, order 0..11.

    Evaluates the printed coefficient tables through their exact
    cancellation structure, so the result keeps full precision both for
    small ac (where K_m(ac) alone overflows the final value by many orders)
    and for large ac (where I and L separately grow like e^{ac}).
    """
    if order < 0 or order > 11:
        raise ValueError("order must be within 0..11")
    if order == 10:
        raise ValueError("the printed closed-form tables stop at even order 8; "
                         "order 10 has no closed form here")
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be > 0")
    x = a * c
    if order % 2:
        ktil = macdonald_k_regular(order, x).value
        h = _ODD_K_SIGN[order] * ktil + _lp_eval(_ODD_RESIDUAL[order], x)
        return h / a
    red = _EVEN_REDUCED[order]
    parts = [_lp_eval(red["poly"], x)]
    for nu_d, coeff in red["d"]:
        parts.append(math.pi * _lp_eval(coeff, x) * i_minus_l(nu_d, x).value)
    for nu_h, coeff in red["h"].items():
        parts.append(math.pi * _lp_eval(coeff, x) * _struve_h_term(nu_h, x))
    for nu_l, coeff in red["residual"].items():
        parts.append(math.pi * _lp_eval(coeff, x) * specfun.struve_l(nu_l, x).value)
    return math.fsum(parts) / a


def cauchy_j1_assembled(a: float, c: float) -> float:
    """The order-1 integral assembled from its two-piece decomposition
    (1/(a^2 c)) (1 - a c K_1(a c)); equal to ``cauchy_j_integral(1, a, c)``
    up to rounding and kept as an independent expression of the same line."""
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be > 0")
    x = a * c
    return -macdonald_k_regular(1, x).value / a


def anger_route_integral(nu: float, a: float) -> float:
    """The printed Anger-function route to int_0^inf J_nu(x)/(x^2+a^2) dx:

        pi / (a sin(pi nu)) * (Jbar_nu(a) - J_nu(a)),  nu non-integer.

    Since Jbar_nu(a) - J_nu(a) = sin(pi nu) A_nu(a) with A_nu the associated
    Anger-Weber function, this expression equals pi A_nu(a)/a.  Measured
    against the quadrature oracle it is off by a few percent at moderate a
    (and its nu->1 limit does not reproduce the order-1 closed form), so the
    identity campaign reports it as a flagged discrepancy rather than an
    identity; the function itself faithfully evaluates the printed formula.
    """
    if float(nu).is_integer():
        raise ValueError("nu must be non-integer; use cauchy_j_integral")
    if abs(nu) > 11:
        raise ValueError("|nu| must be <= 11")
    if a <= 0:
        raise ValueError("a must be > 0")
    jbar = specfun.anger_jbar(nu, a).value
    j = bessel_j_real_order(nu, a)
    return math.pi / (a * math.sin(math.pi * nu)) * (jbar - j)


def anger_route_limit(a: float, h: float = 1e-3) -> float:
    """nu -> 1 limit of ``anger_route_integral`` by Richardson-extrapolated
    central averages in nu (the expression is analytic across nu = 1)."""
    if a <= 0:
        raise ValueError("a must be > 0")

    def central(hh: float) -> float:
        return 0.5 * (anger_route_integral(1.0 + hh, a)
                      + anger_route_integral(1.0 - hh, a))

    f_h, f_h2 = central(h), central(0.5 * h)
    return (4.0 * f_h2 - f_h) / 3.0


@dataclass(frozen=True)
class K0ExpansionCheck:
    approx: float
    exact: float


def k0_expansion_check(a: float, c: float) -> K0ExpansionCheck:
    """Three-term small-argument approximation of the normalized order-0
    integral (2a/pi) int J_0(cr)/(r^2+a^2) dr = I_0(ac) - L_0(ac):

        approx = 1 + (ac)^2/4 - 2 ac / pi

    together with the exact value, for expansion-quality reporting.  The
    linear coefficient is 1/(2 Gamma(3/2)^2) = 2/pi.
    """
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be > 0")
    x = a * c
    if x > 0.5:
        raise ValueError("small-argument check requires a*c <= 0.5")
    approx = 1.0 + 0.25 * x * x - 2.0 * x / math.pi
    exact = i_minus_l(0, x).value
    return K0ExpansionCheck(approx, exact)
