"""Scalar special functions: complex log-Gamma, Pochhammer, 1F1, 2F1 and Tricomi U.

Only the parameter sectors needed for kappa-mu shadowed channel work are
covered (real parameters, 2F1 on z <= 0 and 0 <= z < 1, U with a > 0, z > 0).
Hypergeometric series carry an explicit term budget; running out of terms is
an error, never a silent truncation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numint
from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "SeriesDiagnostics",
    "log_gamma",
    "log_pochhammer",
    "kummer_1f1",
    "log_kummer_1f1",
    "gauss_2f1",
    "tricomi_u",
    "log_tricomi_u",
]

MAX_SERIES_TERMS = 100_000
_EPS = np.finfo(float).eps
_LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2k / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_RADIUS = 15.0


@dataclass(frozen=True)
class SeriesDiagnostics:
    terms_used: int
    last_term_magnitude: float
    converged: bool


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


# --------------------------------------------------------------------------
# log-Gamma
# --------------------------------------------------------------------------

def _log_gamma_right(z: np.ndarray) -> np.ndarray:
    """Principal log-Gamma for Re z >= 0.5 (upward recurrence + Stirling)."""
    shift = np.where(np.abs(z) < _STIRLING_RADIUS, np.ceil(_STIRLING_RADIUS - z.real), 0.0)
    shift = np.maximum(shift, 0.0)
    acc = np.zeros_like(z)
    n_max = int(shift.max()) if shift.size else 0
    for k in range(n_max):
        active = shift > k
        acc = acc + np.where(active, np.log(np.where(active, z + k, 1.0)), 0.0)
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    for coef in reversed(_STIRLING):
        series = series * inv2 + coef
    series = series * inv
    return (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series - acc


def log_gamma(z):
    """Principal branch of log Gamma(z) for complex ``z`` (scalar or array).

    Reflection is used for Re z < 0.5, with the branch fixed so that the
    imaginary part is continuous off the negative real axis. On the negative
    real axis the value is the limit from the upper half plane.

    Raises
    ------
    PoleError
        At z = 0, -1, -2, ...
    DomainError
        For NaN or infinite input.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError("log_gamma: non-finite argument")
    on_pole = (arr.imag == 0) & (arr.real <= 0) & (arr.real == np.floor(arr.real))
    if on_pole.any():
        raise PoleError(f"log_gamma: pole at z={arr[on_pole][0].real!r}")

    out = np.empty_like(arr)
    refl = arr.real < 0.5
    if (~refl).any():
        out[~refl] = _log_gamma_right(arr[~refl])
    if refl.any():
        zr = arr[refl]
        upper = zr.imag >= 0
        w = np.where(upper, zr, np.conj(zr))
        # log sin(pi w) continued analytically through the upper half plane
        log_sin = math.log(0.5) + 0.5j * math.pi - 1j * math.pi * w + np.log1p(-np.exp(2j * math.pi * w))
        res = _LOG_PI - log_sin - _log_gamma_right(1.0 - w)
        out[refl] = np.where(upper, res, np.conj(res))
    return complex(out[0]) if scalar else out


def log_pochhammer(a: float, n: int) -> float:
    """log |(a)_n| for real a with (a)_n != 0."""
    if n == 0:
        return 0.0
    if a > 0:
        return math.lgamma(a + n) - math.lgamma(a)
    return float(sum(math.log(abs(a + k)) for k in range(n)))


# --------------------------------------------------------------------------
# Kummer 1F1
# --------------------------------------------------------------------------

def _series_1f1(a, b, z, tol, max_terms):
    """Scaled Maclaurin sum; returns (mantissa, log_scale, abs_sum_mantissa, diagnostics)."""
    term = 1.0
    total = 1.0
    abs_total = 1.0
    log_scale = 0.0
    n = 0
    while True:
        if _is_nonpositive_int(a) and n >= -a:
            return total, log_scale, abs_total, SeriesDiagnostics(n + 1, 0.0, True)
        ratio = (a + n) / (b + n) * z / (n + 1)
        term *= ratio
        n += 1
        total += term
        abs_total += abs(term)
        if abs(total) > 1e280:
            total *= 1e-280
            term *= 1e-280
            abs_total *= 1e-280
            log_scale += 280.0 * math.log(10.0)
        decreasing = abs((a + n) / (b + n) * z / (n + 1)) < 1.0
        if decreasing and abs(term) <= tol * abs(total):
            return total, log_scale, abs_total, SeriesDiagnostics(n + 1, abs(term), True)
        if n + 1 >= max_terms:
            raise ConvergenceError(
                f"1F1({a}, {b}; {z}) exceeded {max_terms} terms",
                SeriesDiagnostics(n + 1, abs(term), False),
            )


def _asymptotic_log_1f1(a, b, z, tol, max_terms=80):
    """log 1F1 for large positive z; returns None if the expansion cannot reach tol."""
    if _is_nonpositive_int(a):
        return None
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(max_terms):
        term *= (b - a + k) * (1.0 - a + k) / ((k + 1) * z)
        if abs(term) > prev:
            return None
        total += term
        prev = abs(term)
        if abs(term) <= tol * abs(total):
            if total <= 0:
                return None
            lg_b, _ = _lgamma_signed(b)
            lg_a, sa = _lgamma_signed(a)
            if sa < 0:
                return None
            return lg_b - lg_a + z + (a - b) * math.log(z) + math.log(total), k + 2, abs(term)
    return None


def _lgamma_signed(x: float):
    if _is_nonpositive_int(x):
        raise PoleError(f"Gamma pole at {x!r}")
    lg = math.lgamma(x)
    sign = 1.0 if x > 0 or math.floor(x) % 2 == 0 else -1.0
    return lg, sign


_ASYMPTOTIC_Z = 60.0
_DIRECT_NEGATIVE_Z = 5.0


def kummer_1f1(a: float, b: float, z: float, tol: float = 1e-15):
    """Confluent hypergeometric 1F1(a; b; z) for real arguments.

    Positive ``z`` is summed directly (asymptotic expansion beyond z = 60 when
    it can reach ``tol``); moderate negative ``z`` is summed directly as well,
    and ``z < -5`` goes through Kummer's transformation
    ``1F1(a;b;z) = e^z 1F1(b-a;b;-z)`` to avoid cancellation.

    Returns
    -------
    (value, SeriesDiagnostics)
    """
    _check_real(a, b, z)
    if not tol > 0:
        raise DomainError("tol must be positive")
    if _is_nonpositive_int(b):
        raise PoleError(f"1F1: b={b!r} is a nonpositive integer")
    if z == 0 or a == 0:
        return 1.0, SeriesDiagnostics(1, 0.0, True)
    if a == b:
        return math.exp(z), SeriesDiagnostics(1, 0.0, True)
    if z < -_DIRECT_NEGATIVE_Z:
        val, diag = kummer_1f1(b - a, b, -z, tol)
        return math.exp(z) * val, diag
    if z > _ASYMPTOTIC_Z:
        asym = _asymptotic_log_1f1(a, b, z, tol)
        if asym is not None:
            log_val, used, last = asym
            return math.exp(log_val), SeriesDiagnostics(used, last, True)
    total, log_scale, abs_total, diag = _series_1f1(a, b, z, tol, MAX_SERIES_TERMS)
    if z < 0 and abs_total * _EPS > tol * abs(total) * 1e3:
        # cancellation ate the requested accuracy
        diag = SeriesDiagnostics(diag.terms_used, diag.last_term_magnitude, False)
    return total * math.exp(log_scale), diag


def log_kummer_1f1(a: float, b: float, z, tol: float = 1e-15):
    """log 1F1(a; b; z) for a, b > 0 and z >= 0; ``z`` may be an array.

    Never overflows: large arguments use the asymptotic expansion, the rest a
    rescaled Maclaurin sum.
    """
    if not (a > 0 and b > 0):
        raise DomainError("log_kummer_1f1 needs a > 0 and b > 0")
    zs = np.asarray(z, dtype=float)
    scalar = zs.ndim == 0
    zs = np.atleast_1d(zs)
    if np.any(zs < 0) or not np.all(np.isfinite(zs)):
        raise DomainError("log_kummer_1f1 needs finite z >= 0")
    out = np.empty_like(zs)
    if a == b:
        out[:] = zs
        return float(out[0]) if scalar else out

    todo = np.ones(zs.shape, dtype=bool)
    big = zs > _ASYMPTOTIC_Z
    if big.any():
        lg_ratio = math.lgamma(b) - math.lgamma(a)
        zb = zs[big]
        term = np.ones_like(zb)
        total = np.ones_like(zb)
        prev = np.full_like(zb, np.inf)
        ok = np.ones(zb.shape, dtype=bool)
        done = np.zeros(zb.shape, dtype=bool)
        for k in range(80):
            term = term * ((b - a + k) * (1.0 - a + k) / (k + 1)) / zb
            grow = np.abs(term) > prev
            ok &= ~(grow & ~done)
            total = np.where(done, total, total + term)
            prev = np.abs(term)
            done |= np.abs(term) <= tol * np.abs(total)
            if np.all(done | ~ok):
                break
        ok &= done & (total > 0)
        idx = np.flatnonzero(big)
        out[idx[ok]] = lg_ratio + zb[ok] + (a - b) * np.log(zb[ok]) + np.log(total[ok])
        todo[idx[ok]] = False

    if todo.any():
        zt = zs[todo]
        term = np.ones_like(zt)
        total = np.ones_like(zt)
        log_scale = np.zeros_like(zt)
        done = zt == 0
        n = 0
        while not np.all(done):
            ratio = (a + n) / (b + n) * zt / (n + 1)
            term = term * ratio
            n += 1
            total = np.where(done, total, total + term)
            over = total > 1e280
            if over.any():
                total = np.where(over, total * 1e-280, total)
                term = np.where(over, term * 1e-280, term)
                log_scale = np.where(over, log_scale + 280.0 * math.log(10.0), log_scale)
            nxt = (a + n) / (b + n) * zt / (n + 1)
            done |= (nxt < 1.0) & (term <= tol * total)
            if n >= MAX_SERIES_TERMS:
                raise ConvergenceError(
                    f"log 1F1({a}, {b}; z<= {zt.max()}) exceeded {MAX_SERIES_TERMS} terms"
                )
        out[todo] = np.log(total) + log_scale
    return float(out[0]) if scalar else out


# --------------------------------------------------------------------------
# Gauss 2F1
# --------------------------------------------------------------------------

def _series_2f1(a, b, c, z, tol, max_terms):
    term = 1.0
    total = 1.0
    n = 0
    while True:
        if (_is_nonpositive_int(a) and n >= -a) or (_is_nonpositive_int(b) and n >= -b):
            return total, SeriesDiagnostics(n + 1, 0.0, True)
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        term *= ratio
        n += 1
        total += term
        r = abs((a + n) * (b + n) / ((c + n) * (n + 1)) * z)
        tail = abs(term) * r / (1.0 - r) if r < 1.0 else math.inf
        if tail <= tol * abs(total) and abs(term) <= tol * abs(total):
            return total, SeriesDiagnostics(n + 1, abs(term), True)
        if n + 1 >= max_terms:
            raise ConvergenceError(
                f"2F1({a}, {b}; {c}; {z}) exceeded {max_terms} terms",
                SeriesDiagnostics(n + 1, abs(term), False),
            )


def gauss_2f1(a: float, b: float, c: float, z: float, tol: float = 1e-15):
    """Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.

    Negative arguments are mapped into [0, 1) with a Pfaff transformation;
    of the two Pfaff forms the one whose series terminates, or else decays
    faster, is used.

    Returns
    -------
    (value, SeriesDiagnostics)
    """
    _check_real(a, b, c, z)
    if not tol > 0:
        raise DomainError("tol must be positive")
    if _is_nonpositive_int(c):
        raise PoleError(f"2F1: c={c!r} is a nonpositive integer")
    if a == 0 or b == 0 or z == 0:
        return 1.0, SeriesDiagnostics(1, 0.0, True)
    if z >= 1:
        raise DomainError("gauss_2f1 supports z < 1 only")
    if z > 0:
        return _series_2f1(a, b, c, z, tol, MAX_SERIES_TERMS)

    w = z / (z - 1.0)
    # (1-z)^-a 2F1(a, c-b; c; w)  or  (1-z)^-b 2F1(c-a, b; c; w)
    terminating_a = _is_nonpositive_int(c - b)
    terminating_b = _is_nonpositive_int(c - a)
    if terminating_a or (not terminating_b and a - b <= b - a):
        val, diag = _series_2f1(a, c - b, c, w, tol, MAX_SERIES_TERMS)
        return (1.0 - z) ** (-a) * val, diag
    val, diag = _series_2f1(c - a, b, c, w, tol, MAX_SERIES_TERMS)
    return (1.0 - z) ** (-b) * val, diag


# --------------------------------------------------------------------------
# Tricomi U
# --------------------------------------------------------------------------

_SMALL_A = 0.5


def _split_small_a(a, z, q, tol):
    """∫ t^(a-1) g(t) dt for small a, with g = exp(-z t) (1+t)^q.

    On [0, 1] the substitution t = v^(1/a) absorbs the t^(a-1) spike:
    the piece becomes (1/a) ∫ g(v^(1/a)) dv with a bounded integrand.
    """

    def log_lower(v):
        t = np.exp(np.log(v) / a)
        return -z * t + q * np.log1p(t)

    def log_upper(s):
        t = 1.0 + s
        return -z * t + (a - 1.0) * np.log(t) + q * np.log1p(t)

    lo = numint.integrate_segment(log_lower, 0.0, 1.0, rel_tol=tol, abs_tol=0.0, log_integrand=True)
    hi = numint.integrate_semi_infinite(
        log_upper, rel_tol=tol, abs_tol=0.0, scale=1.0 / max(z, 1e-300), log_integrand=True
    )
    lo_shift = lo.log_scale - math.log(a)
    shift = max(lo_shift, hi.log_scale)
    w_lo, w_hi = math.exp(lo_shift - shift), math.exp(hi.log_scale - shift)
    return numint.QuadratureResult(
        value=lo.value * w_lo + hi.value * w_hi,
        abs_error_estimate=lo.abs_error_estimate * w_lo + hi.abs_error_estimate * w_hi,
        evaluations=lo.evaluations + hi.evaluations,
        converged=lo.converged and hi.converged,
        log_scale=shift,
    )


def log_tricomi_u(a: float, b: float, z: float, tol: float = 1e-12):
    """log U(a, b, z) for a > 0, z > 0 from the Laplace-type integral

        U(a, b, z) = 1/Γ(a) ∫ exp(-z t) t^(a-1) (1+t)^(b-a-1) dt.

    Returns ``(log_value, QuadratureResult)``.
    """
    _check_real(a, b, z)
    if not (a > 0 and z > 0):
        raise DomainError(f"tricomi_u needs a > 0 and z > 0, got a={a!r}, z={z!r}")
    p = a - 1.0
    q = b - a - 1.0

    if a < _SMALL_A:
        res = _split_small_a(a, z, q, tol)
    else:
        def log_f(t):
            return -z * t + p * np.log(t) + q * np.log1p(t)

        # mass sits near the maximiser of the log-integrand (or near 1/z)
        scale = max(a, 1.0) / z
        res = numint.integrate_semi_infinite(log_f, rel_tol=tol, abs_tol=0.0, scale=scale, log_integrand=True)
    if not res.converged:
        raise ConvergenceError(f"U({a}, {b}, {z}): quadrature did not converge", res)
    return res.log_value - math.lgamma(a), res


def tricomi_u(a: float, b: float, z: float, tol: float = 1e-12) -> float:
    """Tricomi confluent hypergeometric U(a, b, z) for a > 0, z > 0."""
    log_val, _ = log_tricomi_u(a, b, z, tol)
    return math.exp(log_val)


def _check_real(*args):
    for x in args:
        if not math.isfinite(x):
            raise DomainError(f"non-finite argument {x!r}")
