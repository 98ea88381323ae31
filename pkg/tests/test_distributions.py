"""Sampler and density tests: forced-uniform inverse-CDF values, moment and
CDF agreement over large ensembles, and stream determinism."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from flightlab.distributions import (
    RngStream,
    circular_cauchy_pdf,
    circular_cauchy_radius_icdf,
    exponential_icdf,
    folded_cauchy_icdf,
    folded_cauchy_pdf,
    sample_circular_cauchy,
    sample_exponential,
    sample_folded_cauchy,
    sample_uniform_angle,
    stream_base,
    uniform_block,
)

N_BIG = 1_000_000


@pytest.fixture(scope="module")
def big_uniforms():
    return RngStream(2024, 0).uniforms(N_BIG)


# --- stream determinism and quality -------------------------------------------

def test_stream_scalar_vector_identical():
    s1 = RngStream(99, 5)
    vec = s1.uniforms(64)
    s2 = RngStream(99, 5)
    one_by_one = np.array([s2.next_uniform() for _ in range(64)])
    assert np.array_equal(vec, one_by_one)


def test_stream_block_matches_streams():
    blk = uniform_block(123, np.arange(4, dtype=np.uint64), 32)
    for k in range(4):
        assert np.array_equal(blk[k], RngStream(123, k).uniforms(32))


def test_stream_resume_independent_of_chunking():
    s = RngStream(5, 1)
    a = np.concatenate([s.uniforms(10), s.uniforms(22)])
    assert np.array_equal(a, RngStream(5, 1).uniforms(32))


def test_distinct_streams_uncorrelated():
    u0 = RngStream(7, 0).uniforms(N_BIG)
    u1 = RngStream(7, 1).uniforms(N_BIG)
    corr = np.corrcoef(u0, u1)[0, 1]
    assert abs(corr) <= 3.0 / math.sqrt(N_BIG)


def test_uniform_range_and_moments(big_uniforms):
    u = big_uniforms
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) <= 4.0 * math.sqrt(1.0 / 12.0 / N_BIG)


def test_stream_base_is_pure():
    assert stream_base(1, 2) == stream_base(1, 2)
    assert stream_base(1, 2) != stream_base(1, 3)


# --- exponential ---------------------------------------------------------------

def test_exponential_forced_uniforms():
    assert float(exponential_icdf(1.0, 1.0 - math.exp(-1.0))) == pytest.approx(1.0, abs=1e-15)
    assert float(exponential_icdf(2.0, 0.0)) == 0.0


def test_exponential_rejects_bad_rate():
    with pytest.raises(ValueError):
        exponential_icdf(0.0, 0.5)
    with pytest.raises(ValueError):
        sample_exponential(-1.0, RngStream(0))


def test_exponential_moments(big_uniforms):
    draws = exponential_icdf(1.0, big_uniforms)
    se_mean = draws.std() / math.sqrt(N_BIG)
    assert abs(draws.mean() - 1.0) <= 4.0 * se_mean
    sq = draws ** 2
    assert abs(sq.mean() - 2.0) <= 4.0 * sq.std() / math.sqrt(N_BIG)


# --- folded Cauchy ---------------------------------------------------------------

def test_folded_cauchy_forced_uniforms():
    assert float(folded_cauchy_icdf(1.0, 0.5)) == pytest.approx(1.0, rel=1e-15)
    assert float(folded_cauchy_icdf(2.0, 0.0)) == 0.0


def test_folded_cauchy_tail_fraction(big_uniforms):
    draws = folded_cauchy_icdf(1.0, big_uniforms)
    p_tail = 1.0 - (2.0 / math.pi) * math.atan(10.0)
    frac = float((draws > 10.0).mean())
    se = math.sqrt(p_tail * (1 - p_tail) / N_BIG)
    assert abs(frac - p_tail) <= 4.0 * se


def test_folded_cauchy_ks_statistic(big_uniforms):
    draws = np.sort(folded_cauchy_icdf(1.0, big_uniforms))
    cdf = (2.0 / math.pi) * np.arctan(draws)
    i = np.arange(1, N_BIG + 1)
    ks = max(np.max(i / N_BIG - cdf), np.max(cdf - (i - 1) / N_BIG))
    # 1 percent critical value of the one-sample KS statistic
    assert ks <= 1.628 / math.sqrt(N_BIG)


def test_folded_cauchy_pdf_values_and_normalization():
    assert folded_cauchy_pdf(0.0, 1.0) == pytest.approx(2.0 / math.pi, rel=1e-15)
    assert folded_cauchy_pdf(1.0, 1.0) == pytest.approx(1.0 / math.pi, rel=1e-15)
    mass, _ = quad(lambda r: folded_cauchy_pdf(r, 1.0), 0, np.inf, limit=200)
    assert abs(mass - 1.0) <= 1e-10
    with pytest.raises(ValueError):
        folded_cauchy_pdf(1.0, 0.0)
    with pytest.raises(ValueError):
        folded_cauchy_pdf(-0.5, 1.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 0.999999), st.sampled_from([0.25, 1.0, 3.0, 17.5]))
def test_folded_cauchy_scaling_property_exact(u, a):
    assert float(folded_cauchy_icdf(a, u)) == a * float(folded_cauchy_icdf(1.0, u))


# --- uniform angle ---------------------------------------------------------------

def test_uniform_angle_forced():
    class Scripted:
        def __init__(self, vals):
            self.vals = list(vals)

        def next_uniform(self):
            return self.vals.pop(0)

    assert sample_uniform_angle(Scripted([0.0])) == 0.0
    assert sample_uniform_angle(Scripted([0.25])) == pytest.approx(math.pi / 2)


def test_uniform_angle_trig_moments(big_uniforms):
    theta = 2.0 * math.pi * big_uniforms
    tol = 4.0 / math.sqrt(N_BIG)
    assert abs(np.cos(theta).mean()) <= tol
    assert abs(np.sin(theta).mean()) <= tol
    c2 = np.cos(theta) ** 2
    assert abs(c2.mean() - 0.5) <= 4.0 * c2.std() / math.sqrt(N_BIG)
    cs = np.cos(theta) * np.sin(theta)
    assert abs(cs.mean()) <= 4.0 * cs.std() / math.sqrt(N_BIG)


# --- circular bivariate Cauchy ---------------------------------------------------

def test_circular_cauchy_forced_radius():
    assert float(circular_cauchy_radius_icdf(1.0, 1.0 - 1.0 / math.sqrt(2.0))) \
        == pytest.approx(1.0, rel=1e-12)
    assert float(circular_cauchy_radius_icdf(1.0, 0.0)) == 0.0


def test_circular_cauchy_sampler_consumes_two_uniforms():
    rng = RngStream(3, 0)
    xy = sample_circular_cauchy(1.0, rng)
    assert rng._counter == 2
    assert len(xy) == 2


def test_circular_cauchy_pdf_values():
    assert circular_cauchy_pdf(0.0, 0.0, 1.0) == pytest.approx(1.0 / (2 * math.pi))
    assert circular_cauchy_pdf(0.0, 0.0, 2.0) == pytest.approx(1.0 / (8 * math.pi))
    with pytest.raises(ValueError):
        circular_cauchy_pdf(0.0, 0.0, -1.0)


def test_circular_cauchy_disk_mass():
    # radial CDF from polar integration: F(r) = 1 - b/sqrt(b^2+r^2)
    mass, _ = quad(lambda r: 2 * math.pi * r * circular_cauchy_pdf(r, 0.0, 1.0),
                   0, 100.0, limit=200)
    assert abs(mass - 1.0) <= 1e-2
    assert abs(mass - (1.0 - 1.0 / math.sqrt(1.0 + 100.0 ** 2))) <= 1e-9


@pytest.fixture(scope="module")
def circular_samples():
    u = uniform_block(4242, np.arange(1, dtype=np.uint64), 2 * N_BIG)[0]
    r = circular_cauchy_radius_icdf(1.0, u[0::2])
    theta = 2.0 * math.pi * u[1::2]
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def test_circular_cauchy_empirical_cf_at_unit_frequency(circular_samples):
    phases = circular_samples[:, 0]
    val = np.exp(1j * phases).mean()
    assert abs(val - math.exp(-1.0)) <= 4.0 / math.sqrt(N_BIG)


def test_circular_cauchy_empirical_cf_grid(circular_samples):
    x, y = circular_samples[:, 0], circular_samples[:, 1]
    for al in (-1.0, 0.0, 1.0):
        for be in (-1.0, 0.0, 1.0):
            val = np.exp(1j * (al * x + be * y)).mean()
            expect = math.exp(-math.hypot(al, be))
            assert abs(val - expect) <= 4.0 / math.sqrt(N_BIG)


def test_sampler_rejects_bad_shape():
    with pytest.raises(ValueError):
        circular_cauchy_radius_icdf(0.0, 0.5)
    with pytest.raises(ValueError):
        sample_folded_cauchy(-2.0, RngStream(0))
