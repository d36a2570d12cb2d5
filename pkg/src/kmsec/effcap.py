"""Effective capacity R = -(1/A) log2 E[(1+snr)^-A] over kappa-mu shadowed fading.

Routes:

* ``quadrature``        the defining expectation integrated numerically (reference)
* ``egbmgf``            exact closed form through the bivariate Meijer-G function
* ``rician_shadowed``   the same closed form at mu = 1
* ``m_eq_mu``           closed form through Tricomi U when m = mu
* ``series``            term-wise integration of the 1F1 series, valid everywhere
* ``high_snr``          large-SNR asymptote (needs A < mu)
* ``high_snr_m_eq_mu``  its m = mu form (needs A < m)
* ``monte_carlo``       sample mean over simulated SNR draws

``capacity`` dispatches between them and records the route in the diagnostics.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import numint
from .channel import BRANCH_EPS, ChannelParams, log_pdf, sample
from .errors import ConvergenceError, DomainError
from .mellin_barnes import ContourSpec, EgbmgfInstance, PoleSeparationError, egbmgf_eval
from .specfun import gauss_2f1, log_tricomi_u

__all__ = [
    "Method",
    "QosParams",
    "EvalOptions",
    "CapacityResult",
    "capacity",
    "capacity_quadrature",
    "capacity_exact",
    "capacity_rician_shadowed",
    "capacity_m_eq_mu",
    "capacity_series",
    "capacity_high_snr",
    "capacity_high_snr_m_eq_mu",
    "capacity_monte_carlo",
    "ergodic_capacity",
]

log = logging.getLogger(__name__)

LN2 = math.log(2.0)
POLE_GUARD = 1e-6
SERIES_MAX_TERMS = 10_000
DEFAULT_TOL = 1e-10


class Method(str, enum.Enum):
    AUTO = "auto"
    QUADRATURE = "quadrature"
    EGBMGF = "egbmgf"
    SERIES = "series"
    M_EQ_MU = "m_eq_mu"
    RICIAN_SHADOWED = "rician_shadowed"
    HIGH_SNR = "high_snr"
    HIGH_SNR_M_EQ_MU = "high_snr_m_eq_mu"
    MONTE_CARLO = "monte_carlo"

    @classmethod
    def parse(cls, name: str) -> "Method":
        """Accept both ``high_snr`` and ``high-snr`` spellings."""
        return cls(name.strip().lower().replace("-", "_"))

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class QosParams:
    """Delay-QoS exponent block; canonical form is A = theta * T * B / ln 2."""

    a_cap: float

    def __post_init__(self):
        if not (math.isfinite(self.a_cap) and self.a_cap > 0):
            raise DomainError(f"A must be positive and finite, got {self.a_cap!r}")

    @classmethod
    def from_theta(cls, theta: float, block_t: float, bandwidth: float) -> "QosParams":
        for name, v in (("theta", theta), ("block_t", block_t), ("bandwidth", bandwidth)):
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
        a_cap = theta * block_t * bandwidth / LN2
        log.debug("theta=%g T=%g B=%g -> A=%g", theta, block_t, bandwidth, a_cap)
        return cls(a_cap)


@dataclass(frozen=True)
class EvalOptions:
    method: Method = Method.AUTO
    tol: float = DEFAULT_TOL
    seed: int = 0
    mc_count: int = 1_000_000
    paranoid: bool = False
    contour: ContourSpec | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if isinstance(self.method, str) and not isinstance(self.method, Method):
            object.__setattr__(self, "method", Method.parse(self.method))


@dataclass
class CapacityResult:
    bits_per_s_per_hz: float
    method: Method
    error_estimate: float
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.bits_per_s_per_hz = float(self.bits_per_s_per_hz)
        self.error_estimate = float(self.error_estimate)

    def as_record(self) -> dict:
        return {
            "R": self.bits_per_s_per_hz,
            "method": str(self.method),
            "error_estimate": self.error_estimate,
            "diagnostics": self.diagnostics,
        }


def _near_nonpositive_int(x: float, guard: float) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) < guard


def _peak_scale(power: float, rate: float, a_cap: float) -> float:
    """Rough location of the maximum of g^power (1+g)^-A exp(-rate g)."""
    g = max(power, 1.0) / (rate + a_cap)
    for _ in range(30):
        g = max(power, 1.0) / (rate + a_cap / (1.0 + g))
    return g


def _from_log_expectation(log_e: float, rel_err: float, a_cap: float) -> tuple[float, float]:
    r = -log_e / (a_cap * LN2)
    return max(r, 0.0), rel_err / (a_cap * LN2)


# --------------------------------------------------------------------------
# quadrature reference
# --------------------------------------------------------------------------

def capacity_quadrature(p: ChannelParams, q: QosParams, tol: float = DEFAULT_TOL) -> CapacityResult:
    """R from the expectation integrated numerically against the density (reference route)."""
    a_cap = q.a_cap

    def log_integrand(g):
        return -a_cap * np.log1p(g) + log_pdf(p, g)

    scale = _peak_scale(p.mu, 1.0 / p.decay_length, a_cap)
    res = numint.integrate_semi_infinite(log_integrand, rel_tol=tol, abs_tol=0.0, scale=scale, log_integrand=True)
    if not res.converged:
        raise ConvergenceError("capacity quadrature did not converge", res)
    r, err = _from_log_expectation(res.log_value, res.rel_error_estimate, a_cap)
    return CapacityResult(r, Method.QUADRATURE, err, {"evaluations": res.evaluations, "route": ["quadrature"]})


def ergodic_capacity(p: ChannelParams, tol: float = DEFAULT_TOL) -> float:
    """E[log2(1 + snr)], the no-delay-constraint limit."""

    def log_integrand(g):
        return np.log(np.log1p(g)) + log_pdf(p, g)

    res = numint.integrate_semi_infinite(
        log_integrand, rel_tol=tol, abs_tol=0.0, scale=p.decay_length, log_integrand=True
    )
    if not res.converged:
        raise ConvergenceError("ergodic-capacity quadrature did not converge", res)
    return res.scaled_value / LN2


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------

def _exact_core(p: ChannelParams, q: QosParams, tol: float, contour: ContourSpec | None, method: Method):
    inst = EgbmgfInstance.from_channel(p.kappa, p.mu, p.m, p.avg_snr, q.a_cap)
    g, diag = egbmgf_eval(inst, contour, tol)
    if diag.sign < 0:
        raise ConvergenceError(f"EGBMGF returned non-positive value {g!r}", diag)
    mu, m, k, a_cap = p.mu, p.m, p.kappa, q.a_cap
    # Gamma(mu - m) > 0 here: the separating contour exists only for m < mu
    log_pre = -math.lgamma(a_cap) - math.lgamma(mu - m) + (m - mu) * math.log(m / (mu * k + m))
    r, err = _from_log_expectation(log_pre + diag.log_abs, diag.rel_change, a_cap)
    return CapacityResult(
        r,
        method,
        err,
        {
            "route": [str(method)],
            "egbmgf": g,
            "log_egbmgf": diag.log_abs,
            "x": inst.x,
            "y": inst.y,
            "contour": (diag.contour.c_s, diag.contour.c_t, diag.contour.half_length, diag.contour.nodes_per_unit),
            "imag_residual": diag.imag_residual,
            "refinements": len(diag.refinements),
        },
    )


def _fallback_series(p, q, tol, route, reason):
    res = capacity_series(p, q, tol)
    res.diagnostics["route"] = route + ["series"]
    res.diagnostics["fallback_reason"] = reason
    return res


def capacity_exact(
    p: ChannelParams, q: QosParams, tol: float = DEFAULT_TOL, contour: ContourSpec | None = None
) -> CapacityResult:
    """Exact R through the bivariate Meijer-G closed form.

    Inputs the closed form cannot take are routed automatically and the route
    is recorded in ``diagnostics["route"]``: m = mu goes to the Tricomi-U form;
    kappa = 0, mu - m near a nonpositive integer, m > mu (no separating
    contour) and contour non-convergence go to the series route.
    """
    route = ["egbmgf"]
    if abs(p.m - p.mu) <= BRANCH_EPS:
        res = capacity_m_eq_mu(p, q, tol)
        res.diagnostics["route"] = route + ["m_eq_mu"]
        return res
    if p.kappa == 0:
        return _fallback_series(p, q, tol, route, "kappa = 0")
    if _near_nonpositive_int(p.mu - p.m, POLE_GUARD):
        return _fallback_series(p, q, tol, route, f"Gamma(mu - m) pole (mu - m = {p.mu - p.m:.6g})")
    try:
        return _exact_core(p, q, tol, contour, Method.EGBMGF)
    except PoleSeparationError as exc:
        return _fallback_series(p, q, tol, route, f"pole separation: {exc}")
    except ConvergenceError as exc:
        return _fallback_series(p, q, tol, route, f"contour integral: {exc}")


def capacity_rician_shadowed(
    p: ChannelParams, q: QosParams, tol: float = DEFAULT_TOL, contour: ContourSpec | None = None
) -> CapacityResult:
    """Rician shadowed channel (mu = 1, kappa is the Rician K factor)."""
    if p.mu != 1:
        raise DomainError(f"Rician shadowed form needs mu = 1, got {p.mu!r}")
    route = ["rician_shadowed"]
    if abs(p.m - 1.0) <= BRANCH_EPS:
        res = capacity_m_eq_mu(p, q, tol)
        res.diagnostics["route"] = route + ["m_eq_mu"]
        return res
    if p.kappa == 0:
        return _fallback_series(p, q, tol, route, "kappa = 0")
    if _near_nonpositive_int(1.0 - p.m, POLE_GUARD):
        return _fallback_series(p, q, tol, route, f"Gamma(1 - m) pole (m = {p.m:.6g})")
    try:
        return _exact_core(p, q, tol, contour, Method.RICIAN_SHADOWED)
    except PoleSeparationError as exc:
        return _fallback_series(p, q, tol, route, f"pole separation: {exc}")
    except ConvergenceError as exc:
        return _fallback_series(p, q, tol, route, f"contour integral: {exc}")


def capacity_m_eq_mu(p: ChannelParams, q: QosParams, tol: float = DEFAULT_TOL) -> CapacityResult:
    """R = log2(gbar/m) - (1/A) log2 U(A, A+1-m, m/gbar), valid for m = mu."""
    if abs(p.m - p.mu) > BRANCH_EPS:
        raise DomainError(f"m = mu form needs |m - mu| <= {BRANCH_EPS}, got m={p.m!r}, mu={p.mu!r}")
    m, a_cap, gbar = p.m, q.a_cap, p.avg_snr
    log_u, res = log_tricomi_u(a_cap, a_cap + 1.0 - m, m / gbar, tol)
    r = math.log2(gbar / m) - log_u / (a_cap * LN2)
    err = res.rel_error_estimate / (a_cap * LN2)
    return CapacityResult(max(r, 0.0), Method.M_EQ_MU, err, {"route": ["m_eq_mu"], "log_tricomi_u": log_u})


def capacity_series(p: ChannelParams, q: QosParams, tol: float = DEFAULT_TOL) -> CapacityResult:
    """R from term-wise integration of the 1F1 series in the density.

    E = C * sum_n (m)_n / ((mu)_n n!) c^n J_n,
    J_n = ∫ g^(mu+n-1) exp(-beta g) (1+g)^-A dg = Gamma(mu+n) U(mu+n, mu+n+1-A, beta)

    with beta = mu(1+k)/gbar and c = mu^2 k (1+k) / ((mu k + m) gbar). All
    terms are positive; the term ratio tends to mu k / (mu k + m) < 1.
    """
    k, mu, m, gbar, a_cap = p.kappa, p.mu, p.m, p.avg_snr, q.a_cap
    if p.is_gamma_branch:
        # single-term Gamma channel with the branch shape
        mu = p.gamma_shape
        k = 0.0
        m = mu
    beta = mu * (1.0 + k) / gbar
    c = mu * mu * k * (1.0 + k) / ((mu * k + m) * gbar)
    log_c = math.log(c) if c > 0 else -math.inf
    log_pre = (
        mu * math.log(mu) + m * math.log(m) + mu * math.log1p(k)
        - math.lgamma(mu) - mu * math.log(gbar) - m * math.log(mu * k + m)
    )

    log_terms = []
    err_sum = 0.0
    shift = None
    total = 0.0
    prev_log = None
    n = 0
    converged = False
    while n < SERIES_MAX_TERMS:
        power = mu + n - 1.0

        def log_f(g, power=power):
            return power * np.log(g) - beta * g - a_cap * np.log1p(g)

        res = numint.integrate_semi_infinite(
            log_f, rel_tol=tol * 0.1, abs_tol=0.0, scale=_peak_scale(power + 1.0, beta, a_cap), log_integrand=True
        )
        if not res.converged:
            raise ConvergenceError(f"series term {n}: quadrature did not converge", res)
        coeff = (
            math.lgamma(m + n) - math.lgamma(m) - math.lgamma(mu + n) + math.lgamma(mu) - math.lgamma(n + 1.0)
            if n
            else 0.0
        )
        lt = coeff + (n * log_c if n else 0.0) + res.log_value
        log_terms.append(lt)
        err_sum = max(err_sum, res.rel_error_estimate)
        if shift is None:
            shift = lt
        if lt > shift:
            total *= math.exp(shift - lt)
            shift = lt
        total += math.exp(lt - shift)
        if c == 0:
            converged = True
            break
        if prev_log is not None:
            ratio = math.exp(lt - prev_log)
            if ratio < 1.0:
                tail = math.exp(lt - shift) * ratio / (1.0 - ratio)
                if tail <= tol * 0.1 * total:
                    converged = True
                    break
        prev_log = lt
        n += 1
    if not converged:
        raise ConvergenceError(f"series exceeded {SERIES_MAX_TERMS} terms")
    log_e = log_pre + shift + math.log(total)
    r, err = _from_log_expectation(log_e, err_sum + tol * 0.1, a_cap)
    return CapacityResult(r, Method.SERIES, err, {"route": ["series"], "terms_used": len(log_terms)})


# --------------------------------------------------------------------------
# high-SNR asymptotes
# --------------------------------------------------------------------------

def capacity_high_snr(p: ChannelParams, q: QosParams) -> CapacityResult:
    """Large-SNR asymptote

        R_inf = log2(gbar / (mu (1+k))) - (1/A) log2(Gamma(mu-A)/Gamma(mu) 2F1(m, A; mu; -mu k / m))

    Needs A < mu so that Gamma(mu - A) has a positive argument.
    """
    k, mu, m, a_cap = p.kappa, p.mu, p.m, q.a_cap
    if not a_cap < mu:
        raise DomainError(f"high-SNR form requires A < mu (Gamma(mu - A)); got A={a_cap!r}, mu={mu!r}")
    hyp, diag = gauss_2f1(m, a_cap, mu, -mu * k / m)
    log_inner = math.lgamma(mu - a_cap) - math.lgamma(mu) + math.log(hyp)
    r = math.log2(p.avg_snr / (mu * (1.0 + k))) - log_inner / (a_cap * LN2)
    return CapacityResult(r, Method.HIGH_SNR, 0.0, {"route": ["high_snr"], "hyp2f1_terms": diag.terms_used})


def capacity_high_snr_m_eq_mu(p: ChannelParams, q: QosParams) -> CapacityResult:
    """R_inf = log2(gbar/m) - (1/A) log2(Gamma(m-A)/Gamma(m)) for m = mu (needs A < m)."""
    m, a_cap = p.m, q.a_cap
    if abs(m - p.mu) > BRANCH_EPS:
        raise DomainError(f"m = mu form needs |m - mu| <= {BRANCH_EPS}")
    if not a_cap < m:
        raise DomainError(f"high-SNR form requires A < m (Gamma(m - A)); got A={a_cap!r}, m={m!r}")
    r = math.log2(p.avg_snr / m) - (math.lgamma(m - a_cap) - math.lgamma(m)) / (a_cap * LN2)
    return CapacityResult(r, Method.HIGH_SNR_M_EQ_MU, 0.0, {"route": ["high_snr_m_eq_mu"]})


# --------------------------------------------------------------------------
# Monte Carlo
# --------------------------------------------------------------------------

def capacity_monte_carlo(p: ChannelParams, q: QosParams, count: int = 1_000_000, seed: int = 0) -> CapacityResult:
    """Sample-mean estimate; error_estimate is the delta-method standard error of R."""
    if count < 1000:
        raise DomainError("Monte Carlo needs count >= 1000")
    draws = sample(p, count, seed).values
    v = np.exp(-q.a_cap * np.log1p(draws))
    e = float(v.mean())
    se_e = float(v.std(ddof=1)) / math.sqrt(count)
    r = -math.log2(e) / q.a_cap
    se_r = se_e / (e * q.a_cap * LN2)
    return CapacityResult(r, Method.MONTE_CARLO, se_r, {"route": ["monte_carlo"], "count": count, "seed": seed})


# --------------------------------------------------------------------------
# router
# --------------------------------------------------------------------------

def _auto(p: ChannelParams, q: QosParams, opts: EvalOptions) -> CapacityResult:
    if abs(p.m - p.mu) <= BRANCH_EPS:
        res = capacity_m_eq_mu(p, q, opts.tol)
        res.diagnostics["route"] = ["auto", "m_eq_mu"]
        return res
    if p.mu == 1:
        res = capacity_rician_shadowed(p, q, opts.tol, opts.contour)
    else:
        res = capacity_exact(p, q, opts.tol, opts.contour)
    res.diagnostics["route"] = ["auto"] + res.diagnostics.get("route", [])
    return res


def capacity(p: ChannelParams, q: QosParams, options: EvalOptions | None = None) -> CapacityResult:
    """Effective capacity by the requested route (``auto`` picks the exact closed form that applies)."""
    opts = options or EvalOptions()
    method = opts.method
    if method is Method.AUTO:
        res = _auto(p, q, opts)
    elif method is Method.QUADRATURE:
        res = capacity_quadrature(p, q, opts.tol)
    elif method is Method.EGBMGF:
        res = capacity_exact(p, q, opts.tol, opts.contour)
    elif method is Method.RICIAN_SHADOWED:
        res = capacity_rician_shadowed(p, q, opts.tol, opts.contour)
    elif method is Method.M_EQ_MU:
        res = capacity_m_eq_mu(p, q, opts.tol)
    elif method is Method.SERIES:
        res = capacity_series(p, q, opts.tol)
    elif method is Method.HIGH_SNR:
        res = capacity_high_snr(p, q)
    elif method is Method.HIGH_SNR_M_EQ_MU:
        res = capacity_high_snr_m_eq_mu(p, q)
    elif method is Method.MONTE_CARLO:
        res = capacity_monte_carlo(p, q, opts.mc_count, opts.seed)
    else:  # pragma: no cover - enum is closed
        raise DomainError(f"unknown method {method!r}")

    if opts.paranoid and res.method is not Method.QUADRATURE:
        ref = capacity_quadrature(p, q, opts.tol)
        res.diagnostics["cross_checked"] = True
        res.diagnostics["quadrature"] = ref.bits_per_s_per_hz
        res.diagnostics["paranoid_discrepancy"] = res.bits_per_s_per_hz - ref.bits_per_s_per_hz
    return res
