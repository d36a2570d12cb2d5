"""The bivariate Meijer-G instance behind the exact effective-capacity formula.

With ``x = (mu*kappa + m) * avg_snr / (m*mu*(1+kappa))`` and ``y = mu*kappa/m`` the
function evaluated here is

    G(x, y) = (2 pi i)^-2  ∬  Γ(μ+s+t) Γ(-s) Γ(A+s) Γ(-t) Γ(μ-m+t) / Γ(μ+t)  x^s y^t  ds dt

over upward vertical lines Re s = c_s, Re t = c_t that separate the right pole
families (s, t = 0, 1, 2, ...) from the left ones.

The kernel factorises as F(s) H(t) P(s+t). On a uniform grid with equal steps
in both imaginary directions, s+t also lands on a uniform grid, so the double
trapezoid sum is sum_j F_j sum_k H_k P_{j+k}: one convolution instead of an
n^2 array of log-Gamma evaluations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.signal import fftconvolve

from . import numint
from .errors import ConvergenceError, DomainError, PoleError, SeriesDivergenceError
from .specfun import SeriesDiagnostics, log_gamma

__all__ = [
    "EgbmgfInstance",
    "ContourSpec",
    "EgbmgfDiagnostics",
    "PoleSeparationError",
    "default_contour",
    "egbmgf_kernel",
    "egbmgf_eval",
    "egbmgf_residue_series",
]

POLE_GUARD = 1e-8
MAX_DOUBLINGS = 4
# np.convolve is exact-order and fast enough below this many nodes per axis
_DIRECT_CONVOLVE_MAX = 3000


class PoleSeparationError(DomainError):
    """No pair of straight vertical lines separates the pole families."""


@dataclass(frozen=True)
class EgbmgfInstance:
    mu: float
    m: float
    a_cap: float
    x: float
    y: float

    def __post_init__(self):
        for name in ("mu", "m", "a_cap", "x", "y"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if not (self.mu > 0 and self.m > 0 and self.a_cap > 0):
            raise DomainError("mu, m and a_cap must be positive")
        if not self.x > 0:
            raise DomainError(f"x must be positive, got {self.x!r}")
        if self.y < 0:
            raise DomainError(f"y must be nonnegative, got {self.y!r}")
        d = self.mu - self.m
        if d <= 0 and abs(d - round(d)) < 1e-12:
            raise PoleError(f"mu - m = {d!r} is a nonpositive integer")

    @classmethod
    def from_channel(cls, kappa, mu, m, avg_snr, a_cap):
        x = (mu * kappa + m) * avg_snr / (m * mu * (1.0 + kappa))
        y = mu * kappa / m
        return cls(mu=mu, m=m, a_cap=a_cap, x=x, y=y)


@dataclass(frozen=True)
class ContourSpec:
    c_s: float
    c_t: float
    half_length: float = 40.0
    nodes_per_unit: float = 8.0

    def __post_init__(self):
        if not (self.half_length > 0 and self.nodes_per_unit > 0):
            raise DomainError("half_length and nodes_per_unit must be positive")

    def check(self, inst: EgbmgfInstance) -> None:
        """Raise PoleSeparationError unless both lines separate the pole families."""
        ok_s = -inst.a_cap < self.c_s < 0
        ok_t = max(inst.m - inst.mu, -inst.mu - self.c_s) < self.c_t < 0
        if not (ok_s and ok_t):
            raise PoleSeparationError(
                f"contour (c_s={self.c_s}, c_t={self.c_t}) does not separate poles for {inst}"
            )


def default_contour(inst: EgbmgfInstance) -> ContourSpec:
    """Midpoint abscissae between the nearest left and right pole families."""
    c_s = -min(inst.a_cap, inst.mu) / 2.0
    left_t = max(inst.m - inst.mu, -inst.mu - c_s)
    if left_t >= 0:
        raise PoleSeparationError(
            f"no straight t-line separates the poles (m - mu = {inst.m - inst.mu:.6g} >= 0)"
        )
    spec = ContourSpec(c_s=c_s, c_t=left_t / 2.0)
    spec.check(inst)
    return spec


def _near_pole(z) -> bool:
    z = np.asarray(z, dtype=complex)
    r = np.round(z.real)
    return bool(np.any((r <= 0) & (np.abs(z - r) < POLE_GUARD)))


def _log_kernel(inst: EgbmgfInstance, s, t):
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    args = (inst.mu + s + t, -s, inst.a_cap + s, -t, inst.mu - inst.m + t, inst.mu + t)
    for z in args:
        if _near_pole(z):
            raise PoleError("kernel evaluated within 1e-8 of a Gamma pole")
    return (
        log_gamma(args[0]) + log_gamma(args[1]) + log_gamma(args[2])
        + log_gamma(args[3]) + log_gamma(args[4]) - log_gamma(args[5])
        + s * math.log(inst.x) + t * math.log(inst.y)
    )


def egbmgf_kernel(inst: EgbmgfInstance, s, t):
    """Integrand of the double contour integral at complex ``s``, ``t``.

    Computed as exp of a sum of log-Gammas. ``y = 0`` is rejected because of
    the ``0**t`` factor; the kappa = 0 channel has its own closed form.
    """
    if inst.y == 0:
        raise DomainError("kernel undefined for y = 0 (use the kappa = 0 branch)")
    out = np.exp(_log_kernel(inst, s, t))
    return complex(out) if np.ndim(out) == 0 else out


@dataclass
class EgbmgfDiagnostics:
    contour: ContourSpec
    refinements: list = field(default_factory=list)
    imag_residual: float = 0.0
    boundary_tail: float = 0.0
    converged: bool = False
    log_abs: float = math.nan      # log|G|, usable when G itself overflows
    sign: float = 1.0
    rel_change: float = math.inf   # relative change over the last refinement


def _correlate(p, h):
    """q[i] = sum_k h[k] p[i+k] (valid part)."""
    if h.size <= _DIRECT_CONVOLVE_MAX:
        return np.convolve(p, h[::-1], mode="valid")
    return fftconvolve(p, h[::-1], mode="valid")


def _trapezoid(inst: EgbmgfInstance, spec: ContourSpec):
    """One trapezoid evaluation.

    Returns (log|Re G|, sign of Re G, |Im G|/|Re G|, relative boundary tail).
    """
    h = 1.0 / spec.nodes_per_unit
    n = int(math.ceil(spec.half_length * spec.nodes_per_unit))
    u = np.arange(-n, n + 1) * h
    s = spec.c_s + 1j * u
    t = spec.c_t + 1j * u
    w = spec.c_s + spec.c_t + 1j * np.arange(-2 * n, 2 * n + 1) * h

    log_f = log_gamma(-s) + log_gamma(inst.a_cap + s) + s * math.log(inst.x)
    log_h = log_gamma(-t) + log_gamma(inst.mu - inst.m + t) - log_gamma(inst.mu + t) + t * math.log(inst.y)
    log_p = log_gamma(inst.mu + w)

    sf, sh, sp = log_f.real.max(), log_h.real.max(), log_p.real.max()
    f = np.exp(log_f - sf)
    g = np.exp(log_h - sh)
    p = np.exp(log_p - sp)

    q = _correlate(p, g)          # sum over t for each s node
    r = _correlate(p, f)          # sum over s for each t node
    terms_s = f * q
    total = terms_s.sum()
    edge = np.abs(u) > spec.half_length - 1.0
    tail = max(np.abs(terms_s[edge]).sum(), np.abs(g * r)[edge].sum())
    if total.real == 0:
        raise ConvergenceError("contour sum vanished; cannot normalise")
    log_abs = math.log(abs(total.real)) + sf + sh + sp + 2.0 * math.log(h) - math.log(4.0 * math.pi ** 2)
    return log_abs, math.copysign(1.0, total.real), abs(total.imag / total.real), tail / abs(total)


def egbmgf_eval(inst: EgbmgfInstance, spec: ContourSpec | None = None, tol: float = 1e-10):
    """Evaluate G by truncated double contour integration.

    Starting from ``spec`` (default: midpoint abscissae, half-length 40, 8
    nodes per unit) the node density is doubled, and the half-length too
    when the boundary strip still carries weight, until two successive
    results agree to ``tol``; at most four doublings.

    Returns
    -------
    (value, EgbmgfDiagnostics)
        ``value`` is ``inf`` when G overflows a double; ``diagnostics.log_abs``
        and ``diagnostics.sign`` always carry it exactly.

    Raises
    ------
    PoleSeparationError
        When the index set admits no straight separating lines (m >= mu).
    ConvergenceError
        When refinements keep disagreeing; ``diagnostics.refinements`` holds
        every (half_length, nodes_per_unit, value) triple tried.
    """
    if inst.y == 0:
        raise DomainError("egbmgf_eval needs y > 0 (kappa = 0 has a closed form)")
    if spec is None:
        spec = default_contour(inst)
    else:
        spec.check(inst)
    diag = EgbmgfDiagnostics(contour=spec)
    prev = _trapezoid(inst, spec)
    diag.refinements.append((spec.half_length, spec.nodes_per_unit, prev[1] * _safe_exp(prev[0])))
    for _ in range(MAX_DOUBLINGS):
        if prev[3] > tol:
            spec = replace(spec, half_length=2 * spec.half_length, nodes_per_unit=2 * spec.nodes_per_unit)
        else:
            spec = replace(spec, nodes_per_unit=2 * spec.nodes_per_unit)
        cur = _trapezoid(inst, spec)
        diag.refinements.append((spec.half_length, spec.nodes_per_unit, cur[1] * _safe_exp(cur[0])))
        if cur[1] == prev[1]:
            change = abs(math.expm1(prev[0] - cur[0]))
        else:
            change = math.inf
        if change <= tol and cur[3] <= tol:
            diag.contour = spec
            diag.log_abs = cur[0]
            diag.sign = cur[1]
            diag.rel_change = change
            diag.imag_residual = cur[2]
            diag.boundary_tail = cur[3]
            diag.converged = True
            return cur[1] * _safe_exp(cur[0]), diag
        prev = cur
    diag.contour = spec
    diag.boundary_tail = prev[3]
    raise ConvergenceError(
        f"EGBMGF refinements disagree: {diag.refinements[-2][2]!r} vs {diag.refinements[-1][2]!r}",
        diag,
    )


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _s_line(a_first: float, inst: EgbmgfInstance, tol: float):
    """log|J| and sign of J = (2 pi i)^-1 ∫ Γ(a_first+s) Γ(-s) Γ(A+s) x^s ds."""
    # hugging the leading left pole keeps the oscillatory cancellation small
    left = min(inst.a_cap, a_first)
    c_s = -left + 0.25 * min(1.0, left)
    log_x = math.log(inst.x)

    def log_k(u):
        s = c_s + 1j * u
        return log_gamma(a_first + s) + log_gamma(-s) + log_gamma(inst.a_cap + s) + s * log_x

    ref = log_k(np.zeros(1))[0].real

    def integrand(u):
        return np.exp(log_k(u) - ref).real

    # |integrand| ~ exp(-3 pi |u| / 2) once |u| exceeds a_first
    length = 30.0 + a_first
    res = numint.integrate_segment(integrand, 0.0, length, rel_tol=tol, abs_tol=1e-300)
    if not res.converged:
        raise ConvergenceError(f"s-line integral for a={a_first} did not converge", res)
    val = res.value / math.pi
    if val == 0:
        return -math.inf, 1.0
    return math.log(abs(val)) + ref, math.copysign(1.0, val)


def egbmgf_residue_series(inst: EgbmgfInstance, tol: float = 1e-10, max_terms: int = 2000):
    """G as a sum over the residues of Γ(-t) at t = 0, 1, 2, ...

        G = sum_n (-y)^n / n! * Γ(μ-m+n) / Γ(μ+n) * J(μ+n)

    where each J is a single Mellin-Barnes line in s, integrated numerically.
    The series converges only for y < 1 (y = 1 marginally).

    Raises
    ------
    SeriesDivergenceError
        When the observed term ratio stays at or above one.
    """
    if inst.y == 0:
        log_j, sign_j = _s_line(inst.mu, inst, tol)
        lg, sg = _lgamma_signed(inst.mu - inst.m)
        val = sg * sign_j * math.exp(lg - math.lgamma(inst.mu) + log_j)
        return val, SeriesDiagnostics(1, abs(val), True)

    log_y = math.log(inst.y)
    total = 0.0
    mags = []
    last = math.inf
    for n in range(max_terms):
        log_j, sign_j = _s_line(inst.mu + n, inst, tol)
        lg, sg = _lgamma_signed(inst.mu - inst.m + n)
        log_t = n * log_y - math.lgamma(n + 1.0) + lg - math.lgamma(inst.mu + n) + log_j
        sign = (-1.0) ** n * sg * sign_j
        term = sign * math.exp(log_t)
        total += term
        last = abs(term)
        mags.append(last)
        if n >= 3:
            ratio = mags[-1] / mags[-2] if mags[-2] > 0 else 0.0
            if ratio < 1.0:
                tail = last * ratio / (1.0 - ratio)
                if tail <= tol * abs(total) and last <= tol * abs(total):
                    return total, SeriesDiagnostics(n + 1, last, True)
        if n >= 30:
            window = mags[-10:]
            growth = (window[-1] / window[0]) ** (1.0 / 9.0) if window[0] > 0 else 0.0
            if growth >= 1.0:
                raise SeriesDivergenceError(
                    f"residue series diverges for y={inst.y:.4g} (term ratio ~{growth:.3f})",
                    SeriesDiagnostics(n + 1, last, False),
                )
    raise ConvergenceError(
        f"residue series exceeded {max_terms} terms (y={inst.y:.4g})",
        SeriesDiagnostics(max_terms, last, False),
    )


def _lgamma_signed(x: float):
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma pole at {x!r}")
    sign = 1.0 if x > 0 or math.floor(x) % 2 == 0 else -1.0
    return math.lgamma(x), sign
