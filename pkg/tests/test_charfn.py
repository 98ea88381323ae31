"""Characteristic-function routes, limit laws, empirical CF, and distances."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flightlab.charfn import (
    CFGrid,
    analytic_cf_grid,
    cf_distance,
    cf_grid_to_csv,
    cf_power,
    default_grid_axes,
    empirical_cf,
    gaussian_variances,
    limit_cf_gauss_cauchy,
    limit_cf_gaussian,
    limit_cf_gaussian_linearized,
    limit_cf_grid,
    step_cf_cauchy,
    step_cf_exponential,
    step_cf_quadrature,
)
from flightlab.distributions import uniform_block, circular_cauchy_radius_icdf
from flightlab.specfun import i_minus_l
from flightlab.walk import Regime, StepParams

EXP_PARAMS = StepParams(Regime.EXPONENTIAL, 3.0, 0.05, 0.10)
CAU_PARAMS = StepParams(Regime.FOLDED_CAUCHY, 0.01, 0.02, 0.03)


# --- normalization, boundedness, realness, symmetry ------------------------------

@pytest.mark.parametrize("fn,params", [
    (step_cf_exponential, EXP_PARAMS),
    (step_cf_cauchy, CAU_PARAMS),
    (step_cf_quadrature, EXP_PARAMS),
    (step_cf_quadrature, CAU_PARAMS),
])
def test_cf_normalization_at_origin(fn, params):
    assert fn(0.0, 0.0, params) == 1.0 + 0.0j


def test_cf_bounded_and_real_on_grid():
    for params in (EXP_PARAMS, CAU_PARAMS):
        for a in (-2.0, -0.6, 0.4, 1.8):
            for b in (-1.4, 0.0, 2.0):
                v = step_cf_quadrature(a, b, params)
                assert abs(v) <= 1.0 + 1e-12
                assert abs(v.imag) <= 1e-9


def test_cf_point_reflection_symmetry():
    for params in (EXP_PARAMS, CAU_PARAMS):
        v1 = step_cf_quadrature(0.9, -1.3, params)
        v2 = step_cf_quadrature(-0.9, 1.3, params)
        assert v1 == pytest.approx(v2, abs=1e-12)


# --- series routes ----------------------------------------------------------------

def test_exponential_cf_zero_displacement_closed_form():
    p = StepParams(Regime.EXPONENTIAL, 2.0, 0.0, 0.0)
    got = step_cf_exponential(1.0, 1.0, p)
    c = math.sqrt(2.0)
    assert got.real == pytest.approx(2.0 / math.sqrt(4.0 + c * c), rel=1e-14)


def test_exponential_cf_matches_quadrature():
    got = step_cf_exponential(0.7, -0.3, EXP_PARAMS, k_max=30)
    ref = step_cf_quadrature(0.7, -0.3, EXP_PARAMS)
    assert abs(got - ref) <= 1e-9


def test_exponential_cf_tail_bound_attached():
    val, bound = step_cf_exponential(1.0, 0.5, EXP_PARAMS, k_max=3,
                                     return_bound=True)
    full = step_cf_exponential(1.0, 0.5, EXP_PARAMS, k_max=40)
    assert abs(val - full) <= bound + 1e-15
    assert bound >= 0.0


def test_exponential_cf_rejects():
    with pytest.raises(ValueError):
        step_cf_exponential(1.0, 0.0, EXP_PARAMS, k_max=-1)
    with pytest.raises(ValueError):
        step_cf_exponential(1.0, 0.0, CAU_PARAMS)


def test_cauchy_cf_zero_displacement_is_i_minus_l():
    p = StepParams(Regime.FOLDED_CAUCHY, 0.2, 0.0, 0.0)
    got = step_cf_cauchy(1.0, 2.0, p)
    c = math.hypot(1.0, 2.0)
    assert got.real == pytest.approx(i_minus_l(0, 0.2 * c).value, rel=1e-13)


def test_cauchy_cf_matches_quadrature():
    got = step_cf_cauchy(1.0, 1.0, CAU_PARAMS, k_max=6)
    ref = step_cf_quadrature(1.0, 1.0, CAU_PARAMS)
    assert abs(got - ref) <= 1e-7


def test_cauchy_cf_rejects():
    with pytest.raises(ValueError):
        step_cf_cauchy(1.0, 0.0, CAU_PARAMS, k_max=10)
    with pytest.raises(ValueError):
        step_cf_cauchy(1.0, 0.0, EXP_PARAMS)


# --- limit laws --------------------------------------------------------------------

def test_limit_gaussian_values():
    assert limit_cf_gaussian(0.0, 0.0, 1.0, 1.0, 1.0, 2.0) == 1.0
    assert limit_cf_gaussian(1.0, 0.0, 1.0, 1.0, 1.0, 99.0).real \
        == pytest.approx(math.exp(-2.5 / 2.0))
    assert gaussian_variances(1.0, 1.0, 1.0, 2.0) == (2.5, 5.0)


def test_limit_gaussian_even_symmetry():
    v = limit_cf_gaussian(0.7, -1.1, 1.0, 2.0, 0.5, 1.5)
    assert v == limit_cf_gaussian(-0.7, -1.1, 1.0, 2.0, 0.5, 1.5)
    assert v == limit_cf_gaussian(0.7, 1.1, 1.0, 2.0, 0.5, 1.5)


def test_limit_gauss_cauchy_values():
    assert limit_cf_gauss_cauchy(0.0, 0.0, 1.0, 0.5, 1.5) == 1.0
    assert limit_cf_gauss_cauchy(1.0, 0.0, 1.0, 0.0, 0.0).real \
        == pytest.approx(math.exp(-1.0))
    assert limit_cf_gauss_cauchy(3.0, 4.0, 1.0, 0.0, 0.0).real \
        == pytest.approx(math.exp(-5.0))


def test_limit_linearized_values():
    assert limit_cf_gaussian_linearized(1.0, 0.0, 1.0, 1.0, 1.0, 2.0).real \
        == pytest.approx(math.exp(-1.0))
    # coincides with the full Gaussian limit when the displacements vanish
    assert limit_cf_gaussian_linearized(0.8, -0.6, 1.0, 2.0, 0.0, 0.0) \
        == limit_cf_gaussian(0.8, -0.6, 1.0, 2.0, 0.0, 0.0)


# --- empirical CF ------------------------------------------------------------------

def test_empirical_cf_single_origin_point():
    g = empirical_cf(np.array([[0.0, 0.0]]), [-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0])
    assert np.allclose(g.values, 1.0)


def test_empirical_cf_single_point_phase():
    g = empirical_cf(np.array([[math.pi, 0.0]]), [1.0], [0.0])
    assert g.values[0, 0] == pytest.approx(-1.0, abs=1e-12)


def test_empirical_cf_rejects_empty():
    with pytest.raises(ValueError):
        empirical_cf(np.empty((0, 2)), [0.0], [0.0])


def test_empirical_cf_hermitian_by_construction():
    pts = np.random.default_rng(0).normal(size=(500, 2))
    ax = np.array([-1.0, 0.0, 1.0])
    g = empirical_cf(pts, ax, ax)
    for i in range(3):
        for j in range(3):
            assert g.values[i, j] == pytest.approx(
                np.conj(g.values[2 - i, 2 - j]), abs=1e-13)


def test_empirical_cf_of_heavy_tail_reference_law():
    m = 200_000
    u = uniform_block(999, np.arange(1, dtype=np.uint64), 2 * m)[0]
    r = circular_cauchy_radius_icdf(1.0, u[0::2])
    th = 2.0 * math.pi * u[1::2]
    pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
    alphas, betas = default_grid_axes()
    emp = empirical_cf(pts, alphas, betas)
    ref = limit_cf_grid("gauss_cauchy", alphas, betas, b=1.0, c1=0.0, c2=0.0)
    assert cf_distance(emp, ref) <= 4.0 / math.sqrt(m)
    assert emp.se_bound == pytest.approx(1.0 / math.sqrt(m))


# --- distances and grids -------------------------------------------------------------

def _grid_of(value, ax=(-1.0, 0.0, 1.0)):
    ax = np.asarray(ax)
    return CFGrid(ax, ax.copy(), np.full((len(ax), len(ax)), value, dtype=complex))


def test_cf_distance_basic():
    assert cf_distance(_grid_of(1.0), _grid_of(1.0)) == 0.0
    assert cf_distance(_grid_of(1.0), _grid_of(0.0)) == 1.0


def test_cf_distance_rejects_mismatched_grids():
    with pytest.raises(ValueError):
        cf_distance(_grid_of(1.0), _grid_of(1.0, ax=(-2.0, 0.0, 2.0)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_cf_distance_metric_properties(seed):
    rng = np.random.default_rng(seed)
    ax = np.array([-1.0, 1.0])

    def rand_grid():
        vals = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        return CFGrid(ax, ax.copy(), vals)

    f, g, h = rand_grid(), rand_grid(), rand_grid()
    assert cf_distance(f, g) == pytest.approx(cf_distance(g, f))
    assert cf_distance(f, h) <= cf_distance(f, g) + cf_distance(g, h) + 1e-12


def test_cf_grid_csv_roundtrip(tmp_path):
    from flightlab.cli import _read_cf_grid_csv

    ax = np.array([-0.5, 0.0, 0.5])
    g = analytic_cf_grid(EXP_PARAMS, ax, ax)
    path = tmp_path / "grid.csv"
    cf_grid_to_csv(g, path)
    header = path.read_text().split("\n")[0]
    assert header == "alpha,beta,re,im"
    g2 = _read_cf_grid_csv(path)
    assert np.allclose(g.values, g2.values)
    assert np.array_equal(g.alphas, g2.alphas)


def test_cf_power_and_branch_guard():
    ax = np.array([-1.0, 0.0, 1.0])
    g = analytic_cf_grid(EXP_PARAMS, ax, ax)
    p = cf_power(g, 10)
    assert p.values[1, 1] == pytest.approx(1.0)
    assert abs(p.values[0, 2]) <= 1.0 + 1e-12
    bad = CFGrid(ax, ax.copy(), np.full((3, 3), -0.5 + 0.0j))
    with pytest.raises(ArithmeticError):
        cf_power(bad, 3)


def test_exact_cf_grid_hermitian_symmetry():
    ax = np.linspace(-2.0, 2.0, 9)
    g = analytic_cf_grid(CAU_PARAMS, ax, ax, k_max=5)
    vals = g.values
    assert np.max(np.abs(vals - np.conj(vals[::-1, ::-1]))) <= 1e-10
    assert np.max(np.abs(vals.imag)) <= 1e-12
