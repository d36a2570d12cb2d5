"""Double-exponential quadrature on finite segments and on [0, inf).

Both rules are the trapezoidal rule in a transformed variable ``t``; each level
halves the step and reuses the previous nodes, so the cost of one refinement is
exactly the number of new nodes. The difference between two successive levels
is the reported error estimate, which is pessimistic for analytic integrands
(the DE error roughly squares per level).

Integrands are vectorised: they receive a 1-D float array of abscissae and must
return an array of the same shape. With ``log_integrand=True`` the callable
returns ``log f(x)`` instead (``-inf`` is allowed for f = 0) and the result is
reported as ``value * exp(log_scale)``, which keeps products like
``exp(-b x) * 1F1(...)`` representable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, IntegrandError

__all__ = [
    "QuadratureResult",
    "integrate_semi_infinite",
    "integrate_segment",
]

Integrand = Callable[[np.ndarray], np.ndarray]

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14

_H0 = 0.5
_EPS = np.finfo(float).eps
# exp-decay map x = exp(t - exp(-t)) underflows just below t = -6.6
_SEMI_T_LO = -6.5
_SEMI_T_HI_START = 4.0
_SEMI_T_HI_MAX = 14.0
# tanh-sinh: pi/2 sinh(4) ~ 43, endpoint distance ~ 1e-37 of the half width
_SEG_T_MAX = 4.0


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of one quadrature call.

    The integral equals ``value * exp(log_scale)``; ``log_scale`` is zero
    unless the integrand was supplied in log form.
    """

    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool
    log_scale: float = 0.0

    @property
    def scaled_value(self) -> float:
        """The integral as a plain float (``±inf`` if it overflows)."""
        if self.log_scale < 709.0 or self.value == 0.0:
            return self.value * math.exp(min(self.log_scale, 709.0))
        log_mag = math.log(abs(self.value)) + self.log_scale
        mag = math.exp(log_mag) if log_mag < 709.78 else math.inf
        return math.copysign(mag, self.value)

    @property
    def log_value(self) -> float:
        """Natural log of the (positive) integral."""
        if self.value <= 0.0:
            raise DomainError("log_value requested for a non-positive integral")
        return math.log(self.value) + self.log_scale

    @property
    def rel_error_estimate(self) -> float:
        if self.value == 0.0:
            return math.inf if self.abs_error_estimate > 0 else 0.0
        return self.abs_error_estimate / abs(self.value)


class _Accumulator:
    """Running trapezoid sum, optionally in log-scaled form."""

    def __init__(self, log_mode: bool):
        self.log_mode = log_mode
        self.shift = 0.0 if not log_mode else -math.inf
        self.total = 0.0
        self.abs_total = 0.0
        self.evaluations = 0

    def add(self, f, x: np.ndarray, log_w: np.ndarray) -> np.ndarray:
        """Add contributions of nodes ``x``; returns the per-node magnitudes (scaled)."""
        if x.size == 0:
            return np.zeros(0)
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
        self.evaluations += x.size
        if self.log_mode:
            bad = np.isnan(y) | (y == np.inf)
            if bad.any():
                i = int(np.argmax(bad))
                raise IntegrandError(f"log-integrand not finite at x={x[i]!r}", float(x[i]))
            g = y + log_w
            gmax = float(np.max(g))
            if gmax > self.shift:
                if self.shift > -math.inf:
                    r = math.exp(self.shift - gmax)
                    self.total *= r
                    self.abs_total *= r
                self.shift = gmax
            if self.shift == -math.inf:
                return np.zeros_like(g)
            c = np.exp(g - self.shift)
            s = float(np.sum(c))
            self.total += s
            self.abs_total += s
            return c
        bad = ~np.isfinite(y)
        if bad.any():
            i = int(np.argmax(bad))
            raise IntegrandError(f"integrand not finite at x={x[i]!r}", float(x[i]))
        c = y * np.exp(log_w)
        self.total += float(np.sum(c))
        self.abs_total += float(np.sum(np.abs(c)))
        return np.abs(c)


def _refine(acc, f, mapping, t_lo, t_hi, rel_tol, abs_tol, max_level, est0):
    """Level-doubling loop shared by both rules. ``est0`` is the level-0 estimate."""
    h = _H0
    est = est0
    shift = acc.shift
    err = math.inf
    converged = False
    for level in range(1, max_level + 1):
        h *= 0.5
        k_lo = math.ceil((t_lo / h - 1.0) / 2.0)
        k_hi = math.floor((t_hi / h - 1.0) / 2.0)
        t = (2.0 * np.arange(k_lo, k_hi + 1) + 1.0) * h
        x, log_w = mapping(t)
        acc.add(f, x, log_w)
        prev = est * (math.exp(shift - acc.shift) if acc.log_mode and shift > -math.inf else 1.0)
        shift = acc.shift
        est = h * acc.total
        roundoff = 16.0 * _EPS * h * acc.abs_total
        err = max(abs(est - prev), roundoff)
        if acc.log_mode:
            atol = abs_tol * math.exp(-shift) if shift > -700 else math.inf
        else:
            atol = abs_tol
        if level >= 2 and err <= max(atol, rel_tol * abs(est)):
            converged = True
            break
    return est, err, converged


def _semi_map(scale: float):
    log_scale = math.log(scale)

    def mapping(t):
        e = np.exp(-t)
        log_x = t - e
        x = scale * np.exp(log_x)
        keep = x > 0.0
        log_w = log_x + np.log1p(e) + log_scale
        return x[keep], log_w[keep]

    return mapping


def _segment_map(lo: float, hi: float):
    half = 0.5 * (hi - lo)
    log_half = math.log(half)

    def mapping(t):
        u = 0.5 * math.pi * np.sinh(t)
        au = np.abs(u)
        # distance to the nearer endpoint, computed without cancellation
        d = 2.0 * half / (1.0 + np.exp(2.0 * au))
        x = np.where(u < 0, lo + d, hi - d)
        log_cosh_u = au + np.log1p(np.exp(-2.0 * au)) - math.log(2.0)
        log_w = log_half + math.log(0.5 * math.pi) + np.log(np.cosh(t)) - 2.0 * log_cosh_u
        keep = (x > lo) & (x < hi)
        return x[keep], log_w[keep]

    return mapping


def integrate_semi_infinite(
    f: Integrand,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    *,
    scale: float = 1.0,
    log_integrand: bool = False,
    max_level: int = 12,
) -> QuadratureResult:
    """Integrate ``f`` over (0, inf).

    Uses the map ``x = scale * exp(t - exp(-t))``, suited to integrands that
    decay exponentially and may carry an integrable power singularity at 0.
    ``scale`` should be of the order of the integrand's decay length; the right
    end of the ``t`` range is extended automatically until the tail is
    negligible.

    Raises
    ------
    IntegrandError
        If ``f`` returns NaN or an infinity (``+inf`` in log mode).
    """
    if not (rel_tol > 0 and abs_tol >= 0):
        raise DomainError("tolerances must be positive")
    if not (scale > 0 and math.isfinite(scale)):
        raise DomainError(f"scale must be positive and finite, got {scale!r}")
    mapping = _semi_map(scale)
    acc = _Accumulator(log_integrand)
    tail_tol = 1e-3 * rel_tol

    t_hi = _SEMI_T_HI_START
    t = np.arange(math.ceil(_SEMI_T_LO / _H0), math.floor(t_hi / _H0) + 1) * _H0
    x, log_w = mapping(t)
    c = acc.add(f, x, log_w)
    tail_ok = False
    while True:
        tail = float(np.max(c[-2:])) if c.size else 0.0
        if tail <= tail_tol * abs(acc.total):
            tail_ok = True
            break
        if t_hi >= _SEMI_T_HI_MAX:
            break
        t = t_hi + _H0 * np.arange(1, int(round(1.0 / _H0)) + 1)
        t_hi += 1.0
        x, log_w = mapping(t)
        c = acc.add(f, x, log_w)

    est0 = _H0 * acc.total
    est, err, converged = _refine(
        acc, f, mapping, _SEMI_T_LO, t_hi, rel_tol, abs_tol, max_level, est0
    )
    return QuadratureResult(
        value=float(est),
        abs_error_estimate=float(err),
        evaluations=acc.evaluations,
        converged=converged and tail_ok,
        log_scale=acc.shift if log_integrand else 0.0,
    )


def integrate_segment(
    f: Integrand,
    lo: float,
    hi: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    *,
    log_integrand: bool = False,
    max_level: int = 12,
) -> QuadratureResult:
    """Integrate ``f`` over [lo, hi] with the tanh-sinh rule.

    Endpoint singularities are tolerated as long as ``f`` is finite in the
    open interval; the endpoints themselves are never evaluated.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise DomainError(f"need finite lo < hi, got [{lo!r}, {hi!r}]")
    if not (rel_tol > 0 and abs_tol >= 0):
        raise DomainError("tolerances must be positive")
    mapping = _segment_map(lo, hi)
    acc = _Accumulator(log_integrand)
    t = np.arange(-math.floor(_SEG_T_MAX / _H0), math.floor(_SEG_T_MAX / _H0) + 1) * _H0
    x, log_w = mapping(t)
    acc.add(f, x, log_w)
    est, err, converged = _refine(
        acc, f, mapping, -_SEG_T_MAX, _SEG_T_MAX, rel_tol, abs_tol, max_level, _H0 * acc.total
    )
    return QuadratureResult(
        value=float(est),
        abs_error_estimate=float(err),
        evaluations=acc.evaluations,
        converged=converged,
        log_scale=acc.shift if log_integrand else 0.0,
    )
