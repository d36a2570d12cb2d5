import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmsec.channel import ChannelParams
from kmsec.effcap import QosParams, capacity_quadrature
from kmsec.errors import ConvergenceError, DomainError, PoleError, SeriesDivergenceError
from kmsec.mellin_barnes import (
    ContourSpec,
    EgbmgfInstance,
    PoleSeparationError,
    _trapezoid,
    default_contour,
    egbmgf_eval,
    egbmgf_kernel,
    egbmgf_residue_series,
)

import oracles

LN2 = math.log(2.0)


def capacity_from_log_g(kappa, inst, log_g):
    mu, m, a = inst.mu, inst.m, inst.a_cap
    log_pre = -math.lgamma(a) - math.lgamma(mu - m) + (m - mu) * math.log(m / (mu * kappa + m))
    return -(log_pre + log_g) / (a * LN2)


def reference(kappa, mu, m, a, snr):
    return capacity_quadrature(ChannelParams(kappa, mu, m, snr), QosParams(a), 1e-13).bits_per_s_per_hz


# --- kernel ----------------------------------------------------------------

def test_kernel_oracle():
    inst = EgbmgfInstance(mu=2.0, m=1.0, a_cap=1.0, x=1.0, y=1.0)
    v = egbmgf_kernel(inst, -0.25, -0.25)
    assert v.real == pytest.approx(oracles.KERNEL_M025, rel=1e-13)
    assert abs(v.imag) < 1e-13 * abs(v.real)


def test_kernel_rejects_y_zero_and_poles():
    with pytest.raises(DomainError):
        egbmgf_kernel(EgbmgfInstance(2.0, 1.0, 1.0, 1.0, 0.0), -0.25, -0.25 + 1j)
    inst = EgbmgfInstance(2.0, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(PoleError):
        egbmgf_kernel(inst, 0.0, -0.25)  # Γ(-s)
    with pytest.raises(PoleError):
        egbmgf_kernel(inst, -1.0 + 1e-10, -0.25)  # Γ(A+s)


@settings(max_examples=150, deadline=None)
@given(
    st.floats(-0.9, -0.1), st.floats(-0.9, -0.05), st.floats(-60, 60), st.floats(-60, 60),
    st.floats(0.3, 5.0), st.floats(0.05, 0.25), st.floats(0.2, 4.0), st.floats(0.01, 1e4), st.floats(0.01, 50),
)
def test_kernel_conjugate_symmetry(cs, ct, u, v, mu, m_frac, a, x, y):
    inst = EgbmgfInstance(mu=mu, m=mu * m_frac, a_cap=a, x=x, y=y)
    s, t = complex(cs * min(a, 1.0), u), complex(ct * min(mu, 1.0) * (1.0 - m_frac), v)
    k1 = egbmgf_kernel(inst, s, t)
    k2 = egbmgf_kernel(inst, s.conjugate(), t.conjugate())
    assert abs(k1.conjugate() - k2) <= 1e-13 * abs(k1) + 1e-300


# --- instance and contour ------------------------------------------------

def test_instance_validation():
    with pytest.raises(PoleError):
        EgbmgfInstance(mu=1.0, m=3.0, a_cap=1.0, x=1.0, y=1.0)
    with pytest.raises(PoleError):
        EgbmgfInstance(mu=2.0, m=2.0, a_cap=1.0, x=1.0, y=1.0)
    with pytest.raises(DomainError):
        EgbmgfInstance(mu=2.0, m=1.0, a_cap=1.0, x=0.0, y=1.0)
    with pytest.raises(DomainError):
        EgbmgfInstance(mu=2.0, m=1.0, a_cap=1.0, x=1.0, y=-1.0)
    inst = EgbmgfInstance.from_channel(1.0, 2.0, 1.0, 10.0, 1.0)
    assert inst.x == pytest.approx(3.0 * 10.0 / 4.0)
    assert inst.y == pytest.approx(2.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.05, 0.99), st.floats(0.05, 20))
def test_default_contour_separates_poles(mu, m_frac, a):
    inst = EgbmgfInstance(mu=mu, m=mu * m_frac, a_cap=a, x=1.0, y=1.0)
    c = default_contour(inst)
    assert -a < c.c_s < 0
    assert max(inst.m - mu, -mu - c.c_s) < c.c_t < 0


def test_no_separating_contour_when_m_exceeds_mu():
    inst = EgbmgfInstance(mu=2.5, m=3.5 + 1e-3, a_cap=0.5, x=10.0, y=3.0)
    with pytest.raises(PoleSeparationError):
        default_contour(inst)
    with pytest.raises(PoleSeparationError):
        egbmgf_eval(inst)


def test_user_contour_is_checked():
    inst = EgbmgfInstance.from_channel(1.0, 2.0, 1.0, 10.0, 1.0)
    with pytest.raises(PoleSeparationError):
        egbmgf_eval(inst, ContourSpec(c_s=0.1, c_t=-0.5))
    with pytest.raises(PoleSeparationError):
        egbmgf_eval(inst, ContourSpec(c_s=-0.5, c_t=-1.6))


# --- evaluation ----------------------------------------------------------

@pytest.mark.parametrize(
    "kappa,mu,m,a,snr",
    [(1.0, 2.0, 1.0, 1.0, 10.0), (0.5, 1.0, 0.5, 2.0, 100.0), (0.5, 1.5, 0.8, 2.5, 50.0)],
)
def test_eval_reproduces_oracle_capacity(kappa, mu, m, a, snr):
    inst = EgbmgfInstance.from_channel(kappa, mu, m, snr, a)
    g, diag = egbmgf_eval(inst, tol=1e-10)
    assert diag.converged
    r = capacity_from_log_g(kappa, inst, diag.log_abs)
    assert r == pytest.approx(oracles.CAPACITY[(kappa, mu, m, a, snr)], rel=1e-6)
    assert math.log(g) == pytest.approx(diag.log_abs, rel=1e-14)
    assert diag.imag_residual < 1e-8
    assert len(diag.refinements) >= 2


def test_eval_overflow_is_carried_in_log():
    inst = EgbmgfInstance.from_channel(1.0, 2.0, 1.0, 10.0, 1000.0)
    g, diag = egbmgf_eval(inst)
    assert math.isinf(g) and diag.sign > 0
    r = capacity_from_log_g(1.0, inst, diag.log_abs)
    assert r == pytest.approx(oracles.CAPACITY[(1.0, 2.0, 1.0, 1000.0, 10.0)], rel=1e-6)


def test_eval_convergence_failure_reports_refinements():
    inst = EgbmgfInstance.from_channel(1.0, 2.0, 1.0, 10.0, 1.0)
    with pytest.raises(ConvergenceError) as info:
        egbmgf_eval(inst, ContourSpec(-0.5, -0.5, half_length=0.3, nodes_per_unit=0.5), tol=1e-12)
    diag = info.value.diagnostics
    assert not diag.converged
    assert len(diag.refinements) == 5


@pytest.mark.parametrize(
    "kappa,mu,m,a,snr",
    [(1.0, 2.0, 1.0, 1.0, 10.0), (0.5, 1.5, 0.8, 2.5, 50.0), (5.0, 2.0, 1.0, 0.5, 1000.0)],
)
@pytest.mark.parametrize("ds", [-0.05, 0.05])
@pytest.mark.parametrize("dt", [-0.05, 0.05])
def test_contour_shift_invariance(kappa, mu, m, a, snr, ds, dt):
    tol = 1e-10
    inst = EgbmgfInstance.from_channel(kappa, mu, m, snr, a)
    c = default_contour(inst)
    base, d0 = egbmgf_eval(inst, c, tol)
    _, d1 = egbmgf_eval(inst, ContourSpec(c.c_s + ds, c.c_t + dt), tol)
    assert abs(math.expm1(d1.log_abs - d0.log_abs)) < 10 * tol


@pytest.mark.parametrize(
    "kappa,mu,m,a,snr",
    [(1.0, 2.0, 1.0, 1.0, 10.0), (0.5, 1.0, 0.5, 2.0, 100.0), (0.5, 1.5, 0.8, 2.5, 50.0)],
)
def test_truncation_error_monotone_in_half_length(kappa, mu, m, a, snr):
    inst = EgbmgfInstance.from_channel(kappa, mu, m, snr, a)
    ref = reference(kappa, mu, m, a, snr)
    c = default_contour(inst)
    errs = []
    for half in (2.5, 5.0, 10.0, 20.0, 40.0):
        log_g = _trapezoid(inst, ContourSpec(c.c_s, c.c_t, half, 16))[0]
        errs.append(abs(capacity_from_log_g(kappa, inst, log_g) - ref))
    for e_prev, e_next in zip(errs, errs[1:]):
        assert e_next <= e_prev + 1e-13


# --- residue series ------------------------------------------------------

@pytest.mark.parametrize("kappa,mu,m", [(0.2, 2.0, 1.0), (0.3, 2.0, 1.0), (0.1, 1.5, 0.8)])
def test_residue_series_matches_contour(kappa, mu, m):
    inst = EgbmgfInstance.from_channel(kappa, mu, m, 10.0, 1.0)
    assert inst.y < 1
    tol = 1e-10
    a, _ = egbmgf_eval(inst, tol=tol)
    b, diag = egbmgf_residue_series(inst, tol=tol)
    assert diag.converged
    assert abs(a - b) <= 10 * tol * abs(a)


def test_residue_series_single_term_is_gamma_channel():
    # y = 0: G = Γ(μ-m)/Γ(μ) J(μ), and E[(1+γ)^-A] = G / (Γ(A) Γ(μ-m)) for a Gamma(μ) channel
    mu, m, a, snr = 1.7, 0.6, 1.3, 20.0
    inst = EgbmgfInstance(mu=mu, m=m, a_cap=a, x=snr / mu, y=0.0)
    g, diag = egbmgf_residue_series(inst, tol=1e-11)
    assert diag.terms_used == 1
    r = capacity_from_log_g(0.0, inst, math.log(g))
    assert r == pytest.approx(reference(0.0, mu, m, a, snr), rel=1e-9)


def test_residue_series_flags_divergence():
    inst = EgbmgfInstance.from_channel(3.0, 2.0, 1.0, 10.0, 1.0)
    assert inst.y == 6.0
    with pytest.raises(SeriesDivergenceError) as info:
        egbmgf_residue_series(inst)
    assert not info.value.diagnostics.converged


def test_residue_series_marginal_y_exhausts_budget():
    inst = EgbmgfInstance.from_channel(0.5, 1.0, 0.5, 100.0, 2.0)
    assert inst.y == pytest.approx(1.0)
    with pytest.raises(ConvergenceError):
        egbmgf_residue_series(inst, max_terms=200)


def test_contour_vs_oracle_for_large_y():
    # y = 6: only the double contour integral works here
    inst = EgbmgfInstance.from_channel(3.0, 2.0, 1.0, 10.0, 1.0)
    _, diag = egbmgf_eval(inst)
    r = capacity_from_log_g(3.0, inst, diag.log_abs)
    assert r == pytest.approx(oracles.CAPACITY[(3.0, 2.0, 1.0, 1.0, 10.0)], rel=1e-8)
    assert np.isfinite(diag.imag_residual)
