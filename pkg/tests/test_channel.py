import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from kmsec.channel import (
    ChannelParams,
    cdf,
    cdf_interpolant,
    log_pdf,
    mean_snr_check,
    normalization,
    pdf,
    sample,
)
from kmsec.errors import DomainError
from kmsec.specfun import log_kummer_1f1

import oracles

NORMALIZATION_GRID = list(
    itertools.product((0.0, 1.0, 5.0), (0.5, 1.0, 2.5), (0.5, 1.0, 3.0), (1.0, 100.0))
)


def generic_log_pdf(kappa, mu, m, gbar, g):
    """The 1F1 form of the density, evaluated even where it collapses to a Gamma law."""
    log_pre = (
        mu * math.log(mu) + m * math.log(m) + mu * math.log1p(kappa)
        - math.lgamma(mu) - math.log(gbar) - m * math.log(mu * kappa + m)
    )
    z = mu * mu * kappa * (1 + kappa) / ((mu * kappa + m) * gbar) * g
    return log_pre + (mu - 1) * np.log(g / gbar) - mu * (1 + kappa) * g / gbar + log_kummer_1f1(m, mu, z)


def test_params_validation():
    for bad in [(-0.1, 1, 1, 1), (1, 0, 1, 1), (1, 1, -1, 1), (1, 1, 1, 0), (math.nan, 1, 1, 1), (1, math.inf, 1, 1)]:
        with pytest.raises(DomainError):
            ChannelParams(*bad)


def test_params_helpers():
    p = ChannelParams.from_db(1.0, 2.0, 1.0, 20.0)
    assert p.avg_snr == pytest.approx(100.0)
    assert not p.is_gamma_branch
    assert p.replace(m=2.0).is_gamma_branch
    assert p.replace(m=2.0 + 5e-10).is_gamma_branch
    assert not p.replace(m=2.0 + 1e-6).is_gamma_branch
    assert p.replace(kappa=0.0).gamma_shape == 2.0
    assert p.replace(m=2.0).gamma_shape == 2.0


def test_log_pdf_exponential_case():
    p = ChannelParams(0.0, 1.0, 3.7, 4.0)
    g = np.array([0.1, 1.0, 10.0])
    np.testing.assert_allclose(log_pdf(p, g), -math.log(4.0) - g / 4.0, rtol=1e-14)


def test_pdf_m_eq_mu_value():
    assert pdf(ChannelParams(1.0, 2.0, 2.0, 1.0), 1.0) == pytest.approx(4.0 * math.exp(-2.0), rel=1e-14)


def test_log_pdf_oracle():
    assert log_pdf(ChannelParams(1.0, 2.0, 1.0, 10.0), 5.0) == pytest.approx(
        oracles.LOGPDF_K1_MU2_M1_G10_AT5, rel=1e-13
    )


def test_log_pdf_large_snr_no_overflow():
    p = ChannelParams(5.0, 2.5, 0.5, 1.0)
    v = log_pdf(p, np.array([1e3, 1e5]))
    assert np.all(np.isfinite(v))


def test_log_pdf_at_zero():
    assert log_pdf(ChannelParams(1.0, 2.0, 1.0, 10.0), 0.0) == -math.inf
    assert log_pdf(ChannelParams(0.0, 1.0, 1.0, 10.0), 0.0) == pytest.approx(-math.log(10.0), rel=1e-12)
    p = ChannelParams(2.0, 1.0, 0.5, 10.0)
    assert math.isfinite(log_pdf(p, 0.0))
    assert log_pdf(p, 0.0) == pytest.approx(log_pdf(p, 1e-12), abs=1e-9)
    with pytest.raises(DomainError):
        log_pdf(ChannelParams(1.0, 0.5, 1.0, 10.0), 0.0)
    with pytest.raises(DomainError):
        log_pdf(ChannelParams(1.0, 2.0, 1.0, 10.0), -1.0)


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0, 4.5])
@pytest.mark.parametrize("kappa", [0.5, 3.0])
def test_m_eq_mu_collapse(mu, kappa):
    gbar = 7.0
    p = ChannelParams(kappa, mu, mu, gbar)
    g = np.geomspace(1e-4, 30 * gbar, 100)
    gamma_form = log_pdf(p, g)
    np.testing.assert_allclose(np.exp(generic_log_pdf(kappa, mu, mu, gbar, g) - gamma_form), 1.0, rtol=1e-10)


def test_rician_shadowed_continuity():
    g = np.geomspace(1e-3, 100.0, 40)
    base = log_pdf(ChannelParams(2.0, 1.0, 0.7, 10.0), g)
    for mu in (1.0 - 1e-7, 1.0 + 1e-7):
        near = log_pdf(ChannelParams(2.0, mu, 0.7, 10.0), g)
        np.testing.assert_allclose(near, base, atol=1e-6)


@pytest.mark.parametrize("kappa,mu,m,gbar", NORMALIZATION_GRID)
def test_normalization_grid(kappa, mu, m, gbar):
    assert abs(normalization(ChannelParams(kappa, mu, m, gbar)) - 1.0) <= 1e-8


@pytest.mark.parametrize(
    "p,expected",
    [
        (ChannelParams(0.0, 3.0, 1.0, 2.0), 2.0),
        (ChannelParams(1.0, 2.0, 1.0, 10.0), 10.0),
        (ChannelParams(5.0, 0.5, 1.5, 1.0), 1.0),
    ],
)
def test_mean_snr(p, expected):
    assert mean_snr_check(p) == pytest.approx(expected, rel=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 10), st.floats(0.3, 6), st.floats(0.3, 6), st.floats(-10, 40))
def test_normalization_property(kappa, mu, m, snr_db):
    p = ChannelParams.from_db(kappa, mu, m, snr_db)
    assert abs(normalization(p) - 1.0) <= 1e-8


def test_cdf_gamma_branch_matches_scipy():
    p = ChannelParams(0.0, 2.5, 1.0, 4.0)
    g = np.array([0.1, 1.0, 4.0, 20.0])
    ref = stats.gamma.cdf(g, 2.5, scale=4.0 / 2.5)
    np.testing.assert_allclose(cdf(p, g), ref, rtol=1e-9)


def test_cdf_is_monotone_and_bounded():
    p = ChannelParams(1.0, 2.0, 1.0, 10.0)
    g = np.geomspace(1e-3, 500.0, 50)
    c = cdf(p, g)
    assert np.all(np.diff(c) >= 0) and c[0] >= 0 and c[-1] <= 1.0
    assert c[-1] == pytest.approx(1.0, abs=1e-9)
    # unsorted input returns values in input order
    np.testing.assert_allclose(cdf(p, g[::-1]), c[::-1])


def test_sample_determinism_and_streams():
    p = ChannelParams(1.0, 2.0, 1.0, 10.0)
    a = sample(p, 1000, seed=7)
    b = sample(p, 1000, seed=7)
    assert a.values.tobytes() == b.values.tobytes()
    assert a.seed == 7 and a.params == p and a.rng == "numpy.random.PCG64"
    c = sample(p, 1000, seed=7, stream=1)
    assert not np.array_equal(a.values, c.values)
    assert np.all(a.values >= 0)
    with pytest.raises(DomainError):
        sample(p, 0, seed=1)


def test_sample_kappa_zero_is_gamma():
    p = ChannelParams(0.0, 1.7, 0.9, 3.0)
    draws = sample(p, 100_000, seed=11).values
    assert stats.kstest(draws, stats.gamma(1.7, scale=3.0 / 1.7).cdf).pvalue > 0.01


def test_sample_mean():
    p = ChannelParams(1.0, 2.0, 1.0, 10.0)
    draws = sample(p, 1_000_000, seed=3).values
    se = draws.std(ddof=1) / math.sqrt(draws.size)
    assert abs(draws.mean() - 10.0) < 4 * se


@pytest.mark.parametrize(
    "p", [ChannelParams(1.0, 2.0, 1.0, 10.0), ChannelParams(2.5, 1.3, 0.7, 5.0)]
)
def test_sample_matches_density(p):
    draws = sample(p, 200_000, seed=5).values
    assert stats.kstest(draws, cdf_interpolant(p)).pvalue > 0.01
