"""Quadrature and 1-D search helpers tuned for power-law endpoints.

Everything integrates on the logarithmic axis ``s = log t``. On that axis
an integrable power singularity at 0, or a power decay at infinity,
becomes an exponentially decaying tail, which QUADPACK handles well.
"""

from __future__ import annotations

import math
import warnings

from scipy import integrate

from .errors import DivergenceError

EPS = 2.220446049250313e-16
DEFAULT_TOL = 1e-11
QUAD_LIMIT = 200  # max subintervals per panel
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _safe(g):
    def wrapped(s):
        try:
            v = g(s)
        except (OverflowError, ZeroDivisionError, ValueError):
            # exp(s) under/overflow at the far ends of the log axis
            return 0.0
        if v != v or v == math.inf:
            return 0.0
        return v

    return wrapped


def integrate_logaxis(g, a, b, tol=DEFAULT_TOL):
    """Integrate ``g(s) ds`` for ``s`` between ``log a`` and ``log b``.

    ``g`` is already expressed on the log axis. ``a`` may be 0 and ``b``
    may be ``inf``; the caller is responsible for having checked that
    the integral converges there. Returns ``(value, abs_error)``.
    """
    if not b > a:
        return 0.0, 0.0
    sa = -math.inf if a == 0 else math.log(a)
    sb = math.inf if math.isinf(b) else math.log(b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            _safe(g), sa, sb, epsabs=0.0, epsrel=tol, limit=QUAD_LIMIT
        )
    return val, max(err, 8 * EPS * abs(val))


def integrate_t(h, a, b, tol=DEFAULT_TOL):
    """Integrate ``h(t) dt`` over ``(a, b)`` through the log substitution."""

    def g(s):
        t = math.exp(s)
        return h(t) * t

    return integrate_logaxis(g, a, b, tol)


def power_integral(e, lo, hi):
    """Exact ``int_lo^hi r**(e - 1) dr``; raises on divergence."""
    if hi <= lo:
        return 0.0
    if e > 0:
        if math.isinf(hi):
            raise DivergenceError("power integral diverges at infinity", side="infinity")
        if lo == 0:
            return hi ** e / e
        return lo ** e * math.expm1(e * math.log(hi / lo)) / e
    if e < 0:
        if lo == 0:
            raise DivergenceError("power integral diverges at zero", side="zero")
        if math.isinf(hi):
            return lo ** e / -e
        return lo ** e * math.expm1(e * math.log(hi / lo)) / e
    if lo == 0:
        raise DivergenceError("logarithmic divergence at zero", side="zero")
    if math.isinf(hi):
        raise DivergenceError("logarithmic divergence at infinity", side="infinity")
    return math.log(hi / lo)


def power_affine_moment(c, alpha, d, lo, hi, m, k, closed_form=True, tol=DEFAULT_TOL):
    """``int_lo^hi (c r**alpha + d)**m r**(k - 1) dr`` with error estimate.

    Pure powers and constants use the exact antiderivative unless
    ``closed_form`` is false, in which case every piece goes through
    adaptive quadrature (used as an independent check).
    """
    if hi <= lo:
        return 0.0, 0.0
    if c == 0 or alpha == 0:
        base = d + (c if alpha == 0 else 0.0)
        if base <= 0:
            return 0.0, 0.0
        c, alpha, d = base, 0.0, 0.0
    if d == 0 and c <= 0:
        return 0.0, 0.0
    if d == 0:
        e = alpha * m + k
        val = c ** m * power_integral(e, lo, hi)
        if closed_form:
            return val, 8 * EPS * abs(val)
        return integrate_logaxis(
            lambda s: math.exp(m * math.log(c) + e * s), lo, hi, tol
        )
    # mixed segment: convergence decided by the endpoint exponents
    if lo == 0:
        lead = alpha * m + k if alpha < 0 else k
        if lead <= 0:
            raise DivergenceError("moment diverges at zero", side="zero")
    if math.isinf(hi):
        raise DivergenceError("non-decaying segment on an infinite range", side="infinity")

    def g(s):
        try:
            base = c * math.exp(alpha * s) + d
        except OverflowError:
            return math.exp(m * math.log(c) + (alpha * m + k) * s)
        if base <= 0:
            return 0.0
        return math.exp(m * math.log(base) + k * s)

    return integrate_logaxis(g, lo, hi, tol)


def golden_max(f, a, b, atol=1e-10, iters=200):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a <= atol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def maximize_log(f, a, b, samples=64):
    """Supremum of ``f(t)`` over a finite ``[a, b]`` with ``a > 0``.

    A log-spaced scan locates the best cell, then golden-section search
    refines inside its neighbours. The endpoints are always included.
    """
    la, lb = math.log(a), math.log(b)
    grid = [la + (lb - la) * i / samples for i in range(samples + 1)]
    vals = [f(math.exp(s)) for s in grid]
    i = max(range(len(vals)), key=vals.__getitem__)
    best = vals[i]
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, samples)]
    if hi > lo:
        _, v = golden_max(lambda s: f(math.exp(s)), lo, hi)
        best = max(best, v)
    return best
