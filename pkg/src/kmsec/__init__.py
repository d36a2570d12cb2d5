"""Effective capacity over kappa-mu shadowed fading channels.

Submodules: ``specfun`` (special functions), ``numint`` (double-exponential
quadrature), ``mellin_barnes`` (bivariate Meijer-G evaluation), ``channel``
(fading model and sampler), ``effcap`` (capacity routes) and ``cli``.
"""
__version__ = "0.1.0"

from .channel import ChannelParams, log_pdf, pdf, sample
from .effcap import (
    CapacityResult,
    EvalOptions,
    Method,
    QosParams,
    capacity,
    capacity_exact,
    capacity_high_snr,
    capacity_high_snr_m_eq_mu,
    capacity_m_eq_mu,
    capacity_monte_carlo,
    capacity_quadrature,
    capacity_rician_shadowed,
    capacity_series,
    ergodic_capacity,
)
from .errors import ConvergenceError, DomainError, KmsecError, PoleError, SeriesDivergenceError

__all__ = [
    "ChannelParams",
    "log_pdf",
    "pdf",
    "sample",
    "CapacityResult",
    "EvalOptions",
    "Method",
    "QosParams",
    "capacity",
    "capacity_exact",
    "capacity_high_snr",
    "capacity_high_snr_m_eq_mu",
    "capacity_m_eq_mu",
    "capacity_monte_carlo",
    "capacity_quadrature",
    "capacity_rician_shadowed",
    "capacity_series",
    "ergodic_capacity",
    "ConvergenceError",
    "DomainError",
    "KmsecError",
    "PoleError",
    "SeriesDivergenceError",
]
