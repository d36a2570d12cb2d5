"""kappa-mu shadowed fading: parameters, log-density, moments and sampling.

The SNR density is

    f(g) = mu^mu m^m (1+k)^mu / (Gamma(mu) gbar (mu k + m)^m) (g/gbar)^(mu-1)
           * exp(-mu (1+k) g / gbar) * 1F1(m; mu; mu^2 k (1+k) g / ((mu k + m) gbar))

with k = kappa and gbar the mean SNR. For kappa = 0, or m = mu, it collapses to
a Gamma density (shape mu, resp. m) with mean gbar, which is evaluated
directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import numint
from .errors import ConvergenceError, DomainError
from .specfun import log_kummer_1f1

__all__ = [
    "BRANCH_EPS",
    "ChannelParams",
    "SampleBatch",
    "log_pdf",
    "pdf",
    "normalization",
    "mean_snr_check",
    "cdf",
    "cdf_interpolant",
    "sample",
]

BRANCH_EPS = 1e-9
RNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True)
class ChannelParams:
    kappa: float
    mu: float
    m: float
    avg_snr: float

    def __post_init__(self):
        for name in ("kappa", "mu", "m", "avg_snr"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if self.kappa < 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa!r}")
        if not (self.mu > 0 and self.m > 0 and self.avg_snr > 0):
            raise DomainError("mu, m and avg_snr must be positive")

    @classmethod
    def from_db(cls, kappa, mu, m, avg_snr_db):
        return cls(kappa=kappa, mu=mu, m=m, avg_snr=10.0 ** (avg_snr_db / 10.0))

    @property
    def is_gamma_branch(self) -> bool:
        return self.kappa == 0 or abs(self.m - self.mu) <= BRANCH_EPS

    @property
    def gamma_shape(self) -> float:
        """Shape of the Gamma density the model reduces to (only meaningful on that branch)."""
        return self.mu if self.kappa == 0 else self.m

    @property
    def decay_length(self) -> float:
        """1 / (exponential decay rate of the density's tail)."""
        if self.is_gamma_branch:
            return self.avg_snr / self.gamma_shape
        k, mu, m = self.kappa, self.mu, self.m
        return (mu * k + m) * self.avg_snr / (m * mu * (1.0 + k))

    def replace(self, **changes) -> "ChannelParams":
        fields = dict(kappa=self.kappa, mu=self.mu, m=self.m, avg_snr=self.avg_snr)
        fields.update(changes)
        return ChannelParams(**fields)


@dataclass(frozen=True)
class SampleBatch:
    values: np.ndarray
    seed: int
    params: ChannelParams
    stream: int = 0
    rng: str = RNG_NAME


def _log_pdf_positive(p: ChannelParams, g: np.ndarray) -> np.ndarray:
    if p.is_gamma_branch:
        k = p.gamma_shape
        rate = k / p.avg_snr
        return k * math.log(rate) - math.lgamma(k) + (k - 1.0) * np.log(g) - rate * g
    k, mu, m, gbar = p.kappa, p.mu, p.m, p.avg_snr
    log_pre = (
        mu * math.log(mu) + m * math.log(m) + mu * math.log1p(k)
        - math.lgamma(mu) - math.log(gbar) - m * math.log(mu * k + m)
    )
    arg = mu * mu * k * (1.0 + k) / ((mu * k + m) * gbar) * g
    return log_pre + (mu - 1.0) * np.log(g / gbar) - mu * (1.0 + k) * g / gbar + log_kummer_1f1(m, mu, arg)


def log_pdf(p: ChannelParams, snr):
    """Natural log of the SNR density at ``snr`` (scalar or array).

    At snr = 0 the result is -inf for mu > 1 (Gamma shape > 1 on that
    branch) and the finite limit for shape 1; for shape < 1 the density
    diverges and a DomainError is raised.
    """
    g = np.asarray(snr, dtype=float)
    scalar = g.ndim == 0
    g = np.atleast_1d(g)
    if np.any(np.isnan(g)) or np.any(g < 0):
        raise DomainError("snr must be >= 0")
    out = np.empty_like(g)
    pos = g > 0
    if pos.any():
        out[pos] = _log_pdf_positive(p, g[pos])
    if (~pos).any():
        shape = p.gamma_shape if p.is_gamma_branch else p.mu
        if shape > 1:
            out[~pos] = -np.inf
        elif shape == 1:
            out[~pos] = _log_pdf_positive(p, np.array([1e-300]))[0]
        else:
            raise DomainError("density diverges at snr = 0 for shape < 1")
    return float(out[0]) if scalar else out


def pdf(p: ChannelParams, snr):
    return np.exp(log_pdf(p, snr))


def normalization(p: ChannelParams, tol: float = 1e-12) -> float:
    """Integral of the density over (0, inf); should be 1."""
    res = numint.integrate_semi_infinite(
        lambda g: log_pdf(p, g), rel_tol=tol, abs_tol=0.0, scale=p.decay_length, log_integrand=True
    )
    if not res.converged:
        raise ConvergenceError("normalization quadrature did not converge", res)
    return res.scaled_value


def mean_snr_check(p: ChannelParams, tol: float = 1e-10) -> float:
    """First moment of the density by quadrature; equals ``avg_snr`` for a correct density."""
    res = numint.integrate_semi_infinite(
        lambda g: np.log(g) + log_pdf(p, g),
        rel_tol=tol,
        abs_tol=0.0,
        scale=p.decay_length,
        log_integrand=True,
    )
    if not res.converged:
        raise ConvergenceError("mean quadrature did not converge", res)
    return res.scaled_value


def cdf(p: ChannelParams, snr, tol: float = 1e-11) -> np.ndarray:
    """CDF by summing quadratures of the density over consecutive segments."""
    g = np.atleast_1d(np.asarray(snr, dtype=float))
    order = np.argsort(g)
    out = np.empty_like(g)
    acc = 0.0
    lo = 0.0
    for i in order:
        hi = g[i]
        if hi > lo:
            res = numint.integrate_segment(
                lambda x: log_pdf(p, x), lo, hi, rel_tol=tol, abs_tol=0.0, log_integrand=True
            )
            acc += res.scaled_value
            lo = hi
        out[i] = min(acc, 1.0)
    return out


def cdf_interpolant(p: ChannelParams, n_grid: int = 400, tol: float = 1e-11):
    """Monotone interpolant of the CDF on a log-spaced grid spanning the bulk of the mass.

    Returns a callable suitable for ``scipy.stats.kstest``.
    """
    lo = p.avg_snr * 1e-8
    hi = p.decay_length * 60.0
    grid = np.geomspace(lo, hi, n_grid)
    values = cdf(p, grid, tol)
    log_grid = np.log(grid)
    interp = PchipInterpolator(log_grid, values, extrapolate=False)

    def F(x):
        x = np.asarray(x, dtype=float)
        y = np.empty_like(x)
        small = x <= lo
        large = x >= hi
        mid = ~(small | large)
        y[small] = values[0] * np.clip(x[small] / lo, 0.0, 1.0)
        y[large] = 1.0
        y[mid] = interp(np.log(x[mid]))
        return y

    return F


def sample(p: ChannelParams, count: int, seed: int, stream: int = 0) -> SampleBatch:
    """Draw ``count`` i.i.d. SNR values.

    Hierarchical construction, exact for non-integer mu and m:
    shadowing power S ~ Gamma(m, 1/m); N ~ Poisson(mu * kappa * S);
    W ~ Gamma(mu + N, 1); snr = avg_snr * W / (mu * (1 + kappa)).

    Independent parallel streams come from ``SeedSequence(seed,
    spawn_key=(stream,))``; stream 0 is the default generator for ``seed``.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if stream == 0:
        seq = np.random.SeedSequence(seed)
    else:
        seq = np.random.SeedSequence(seed, spawn_key=(stream,))
    rng = np.random.Generator(np.random.PCG64(seq))
    shadow = rng.gamma(p.m, 1.0 / p.m, size=count)
    n = rng.poisson(p.mu * p.kappa * shadow)
    w = rng.gamma(p.mu + n, 1.0)
    values = p.avg_snr * w / (p.mu * (1.0 + p.kappa))
    return SampleBatch(values=values, seed=seed, params=p, stream=stream)
