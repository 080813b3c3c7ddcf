"""Lorentz quasi-norms, the weak (Marcinkiewicz) norm and the maximal function.

All norms act on a decreasing rearrangement (a :class:`OneDimFunction`).
The integration route depends on its representation:

* piecewise power-affine ``u*`` -- per-panel exact antiderivatives for
  pure powers, adaptive quadrature on the log axis otherwise;
* level-set ``u*`` -- the layer-cake form
  ``int (u* t^(1/p))^q dt/t = p int s^(q-1) mu(s)^(q/p) ds``;
* anything else -- adaptive quadrature of the defining integral between
  breakpoints.

Divergence is decided from endpoint exponents before any quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._quad import (
    DEFAULT_TOL,
    EPS,
    integrate_logaxis,
    integrate_t,
    maximize_log,
    power_affine_moment,
    power_integral,
)
from .errors import DivergenceError, DomainError
from .profile import ZERO_HINT, Hint
from .rearrange import (
    DimensionContext,
    FunctionOneDim,
    LevelSetOneDim,
    OneDimFunction,
    PiecewiseOneDim,
)

_SEARCH_DECADES = 12


@dataclass(frozen=True)
class LorentzParams:
    """Dimension ``n``, gradient exponent ``p`` and second index ``q``."""

    n: int
    p: float
    q: float = math.inf

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n}")
        if not (1 <= self.p < self.n):
            raise DomainError(f"need 1 <= p < n, got p={self.p}, n={self.n}")
        if not (self.q >= 1):
            raise DomainError(f"need q >= 1 or q = inf, got {self.q}")

    @property
    def p_star(self) -> float:
        return self.n * self.p / (self.n - self.p)

    @property
    def ctx(self) -> DimensionContext:
        return DimensionContext(int(self.n))

    @property
    def omega(self) -> float:
        return self.ctx.omega

    @property
    def hardy_exponent(self) -> float:
        """``(n - p) / p``, the decay rate of the extremal ``|x|^-(n-p)/p``."""
        return (self.n - self.p) / self.p

    def with_q(self, q: float) -> "LorentzParams":
        return LorentzParams(self.n, self.p, q)


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    diverged: bool = False

    @classmethod
    def divergent(cls) -> "QuadResult":
        return cls(math.nan, math.inf, True)

    def __float__(self):
        if self.diverged:
            raise DivergenceError("value of a divergent integral consumed")
        return self.value


# ---------------------------------------------------------------------------
# q < inf
# ---------------------------------------------------------------------------


def _check_decreasing(f: OneDimFunction):
    bps = list(f.breakpoints)
    lo = bps[0] * 1e-3 if bps else 1e-3
    hi = bps[-1] * 1e3 if bps else 1e3
    pts = sorted(set([lo * (hi / lo) ** (i / 32) for i in range(33)] + bps))
    vals = [f(t) for t in pts]
    for a, b in zip(vals, vals[1:]):
        if b > a + 1e-9 * max(1.0, abs(a)):
            raise DomainError("input to a Lorentz norm must be non-increasing")


def _piecewise_integral(f: PiecewiseOneDim, m, k, upper, closed_form, tol):
    total, err = 0.0, 0.0
    for seg in f.segments:
        hi = min(seg.hi, upper)
        if hi <= seg.lo:
            break
        v, e = power_affine_moment(seg.c, seg.alpha, seg.d, seg.lo, hi, m, k, closed_form, tol)
        total += v
        err += e
    return total, err


def _generic_integral(f: OneDimFunction, p, q, upper, tol):
    c, e = f.head
    if c > 0 and q * e + q / p <= 0:
        raise DivergenceError("Lorentz integral diverges at t = 0", side="zero")
    edges = [0.0] + [b for b in f.breakpoints if b < upper]
    if math.isinf(upper):
        c, e = f.tail
        if c > 0:
            if q * e + q / p >= 0:
                raise DivergenceError("Lorentz integral diverges at t = inf", side="infinity")
            edges.append(math.inf)
        elif len(edges) == 1:
            edges.append(math.inf)
    else:
        edges.append(upper)

    def g(s):
        v = f(math.exp(s))
        if v <= 0:
            return 0.0
        return math.exp(q * (math.log(v) + s / p))

    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, ee = integrate_logaxis(g, a, b, tol)
        total += v
        err += ee
    return total, err


def _mu_exponent(f: LevelSetOneDim, hint: Hint) -> tuple[float, float]:
    """``mu(s) ~ A s^e`` from a radial hint ``C r^a``; returns ``(A, e)``."""
    c, a = hint
    n = f.ctx.n
    return f.ctx.omega * c ** (-n / a), n / a


def _levelset_integral(f: LevelSetOneDim, p, q, upper, tol):
    levels = list(f.levels)
    if math.isinf(upper):
        if math.isinf(f.support_measure):
            c, a = f.source.tail
            if a >= 0:
                raise DivergenceError("non-decaying tail", side="infinity")
            _, e = _mu_exponent(f, f.source.tail)
            if 1 + e / p <= 0:
                raise DivergenceError("Lorentz integral diverges at t = inf", side="infinity")
    elif upper < f.support_measure:
        cut = f(upper)
        if cut > 0:
            levels.append(cut)
    if f.unbounded:
        _, e = _mu_exponent(f, f.source.head)
        if 1 + e / p >= 0:
            raise DivergenceError("Lorentz integral diverges at t = 0", side="zero")
    edges = [0.0] + sorted(set(levels))
    if f.unbounded:
        edges.append(math.inf)

    def g(s):
        t = math.exp(s)
        m = min(f.mu(t), upper)
        if m <= 0:
            return 0.0
        return p * math.exp(q * s + (q / p) * math.log(m))

    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, ee = integrate_logaxis(g, a, b, tol)
        total += v
        err += ee
    return total, err


def lorentz_integral(ustar: OneDimFunction, p: float, q: float, upper=math.inf,
                     tol=DEFAULT_TOL, closed_form=True):
    """``int_0^upper (u*(t) t^(1/p))^q dt/t`` as ``(value, abs_error)``.

    Raises :class:`DivergenceError` when the integral is infinite.
    """
    if isinstance(ustar, PiecewiseOneDim):
        return _piecewise_integral(ustar, q, q / p, upper, closed_form, tol)
    if isinstance(ustar, LevelSetOneDim):
        return _levelset_integral(ustar, p, q, upper, tol)
    _check_decreasing(ustar)
    return _generic_integral(ustar, p, q, upper, tol)


def lorentz_quasinorm(ustar: OneDimFunction, p: float, q: float, *, upper=math.inf,
                      tol=DEFAULT_TOL, closed_form=True) -> QuadResult:
    """``||u||_{p,q} = (int_0^inf (u*(t) t^(1/p))^q dt/t)^(1/q)`` for finite ``q``.

    Use :func:`weak_norm` for ``q = inf``. ``upper`` restricts the
    integral to ``(0, upper)``.
    """
    if math.isinf(q):
        raise DomainError("q = inf is handled by weak_norm")
    if not (p > 0 and q > 0):
        raise DomainError("Lorentz indices must be positive")
    try:
        val, err = lorentz_integral(ustar, p, q, upper, tol, closed_form)
    except DivergenceError:
        return QuadResult.divergent()
    norm = val ** (1.0 / q)
    nerr = norm * err / (q * val) if val > 0 else err ** (1.0 / q)
    return QuadResult(norm, max(nerr, 4 * EPS * norm))


# ---------------------------------------------------------------------------
# q = inf
# ---------------------------------------------------------------------------


def _power_limit(c, e):
    """Limit of ``c x^e`` (``c >= 0``) as ``x -> 0+``.

    Limits at infinity are taken with ``x = 1/t``, i.e. by negating ``e``.
    """
    if c == 0 or e > 0:
        return 0.0
    if e == 0:
        return c
    raise DivergenceError("supremum is unbounded")


def _segment_weak_sup(seg, p):
    """``sup t^(1/p) (c t^beta + d)`` over one piece ``[lo, hi)``."""
    ip = 1.0 / p
    lo, hi = seg.lo, seg.hi
    if seg.is_constant:
        d = seg.value(1.0)
        if d <= 0:
            return 0.0
        if math.isinf(hi):
            raise DivergenceError("constant tail has unbounded weak norm", side="infinity")
        return hi ** ip * d
    c, b, d = seg.c, seg.alpha, seg.d

    def g(t):
        return t ** ip * max(c * t ** b + d, 0.0)

    cands = []
    if lo == 0:
        if b < 0:
            try:
                cands.append(_power_limit(c, b + ip))
            except DivergenceError as exc:
                raise DivergenceError(str(exc), side="zero") from None
        else:
            cands.append(0.0)
    else:
        cands.append(g(lo))
    if math.isinf(hi):
        try:
            cands.append(_power_limit(c, -(b + ip)))
        except DivergenceError as exc:
            raise DivergenceError(str(exc), side="infinity") from None
    else:
        cands.append(g(hi))
    if d != 0:
        x = -d / (c * (p * b + 1)) if p * b + 1 != 0 else -1.0
        if x > 0:
            t_star = x ** (1.0 / b)
            if lo < t_star < hi:
                cands.append(g(t_star))
    return max(cands)


def _panel_sup(g, a, b):
    if a == 0 and math.isinf(b):
        a, b = 10.0 ** -_SEARCH_DECADES, 10.0 ** _SEARCH_DECADES
    if math.isinf(b):
        b = a * 10.0 ** _SEARCH_DECADES
    if a == 0:
        a = b * 10.0 ** -_SEARCH_DECADES
    decades = max(1, math.log10(b / a))
    return maximize_log(g, a, b, samples=int(8 * decades) + 8)


def _levelset_weak(f: LevelSetOneDim, p):
    ip = 1.0 / p

    def g(s):
        m = f.mu(s)
        if math.isinf(m):
            raise DivergenceError("weak norm unbounded: infinite level set", side="infinity")
        return s * m ** ip

    cands = []
    if math.isinf(f.support_measure):
        c, a = f.source.tail
        if a >= 0:
            raise DivergenceError("non-decaying tail", side="infinity")
        amp, e = _mu_exponent(f, f.source.tail)
        cands.append(_power_limit(amp ** ip, 1 + e * ip))
    if f.unbounded:
        amp, e = _mu_exponent(f, f.source.head)
        try:
            cands.append(_power_limit(amp ** ip, -(1 + e * ip)))
        except DivergenceError as exc:
            raise DivergenceError(str(exc), side="zero") from None
    edges = [0.0] + list(f.levels)
    if f.unbounded:
        edges.append(math.inf)
    for a, b in zip(edges[:-1], edges[1:]):
        if a > 0:
            cands.append(g(a))
        if math.isfinite(b):
            cands.append(g(b * (1 - 4 * EPS)))
        cands.append(_panel_sup(g, a, b))
    return max(cands)


def _generic_weak(f: OneDimFunction, p):
    ip = 1.0 / p

    def g(t):
        return t ** ip * f(t)

    c, e = f.head
    try:
        cands = [_power_limit(c, e + ip) if e < 0 else 0.0]
    except DivergenceError as exc:
        raise DivergenceError(str(exc), side="zero") from None
    edges = [0.0] + list(f.breakpoints)
    c, e = f.tail
    if c > 0:
        try:
            cands.append(_power_limit(c, -(e + ip)))
        except DivergenceError as exc:
            raise DivergenceError(str(exc), side="infinity") from None
        edges.append(math.inf)
    elif len(edges) == 1:
        edges.append(math.inf)
    for a, b in zip(edges[:-1], edges[1:]):
        if a > 0:
            cands.append(g(a))
        if math.isfinite(b):
            cands.append(g(b * (1 - 4 * EPS)))
        cands.append(_panel_sup(g, a, b))
    return max(cands)


def weak_norm(ustar: OneDimFunction, p: float) -> float:
    """``||u||_{p,inf} = sup_t t^(1/p) u*(t)``.

    Raises :class:`DivergenceError` if the supremum is infinite.
    """
    if isinstance(ustar, PiecewiseOneDim):
        return max(_segment_weak_sup(seg, p) for seg in ustar.segments)
    if isinstance(ustar, LevelSetOneDim):
        return _levelset_weak(ustar, p)
    return _generic_weak(ustar, p)


# ---------------------------------------------------------------------------
# maximal function and the associated norm
# ---------------------------------------------------------------------------


def _segment_integral(seg, a, b):
    if b <= a:
        return 0.0
    if seg.is_constant:
        v = seg.value(1.0)
        if v == 0:
            return 0.0
        if math.isinf(b):
            raise DivergenceError("constant tail is not integrable", side="infinity")
        return v * (b - a)
    linear = seg.d * (b - a) if seg.d != 0 else 0.0
    return seg.c * power_integral(seg.alpha + 1, a, b) + linear


def running_integrator(fstar: OneDimFunction, tol=DEFAULT_TOL):
    """``t -> int_0^t f*(s) ds`` as a callable.

    Piecewise inputs get a table of per-segment integrals, so each call
    costs one binary search; other inputs are integrated on demand.
    """
    c, e = fstar.head
    if c > 0 and e <= -1:
        raise DivergenceError("f* is not integrable at 0", side="zero")
    if isinstance(fstar, PiecewiseOneDim):
        segs = fstar.segments
        cum = [0.0]
        for seg in segs:
            if math.isinf(seg.hi):
                break
            cum.append(cum[-1] + _segment_integral(seg, seg.lo, seg.hi))

        def F(t):
            if t <= 0:
                return 0.0
            i = fstar.pieces.segment_index(t)
            return cum[i] + _segment_integral(segs[i], segs[i].lo, t)

        return F

    def F(t):
        if t <= 0:
            return 0.0
        edges = [0.0] + [b for b in fstar.breakpoints if b < t] + [t]
        return sum(integrate_t(fstar, a, b, tol)[0] for a, b in zip(edges[:-1], edges[1:]))

    return F


def running_integral(fstar: OneDimFunction, t: float, tol=DEFAULT_TOL) -> float:
    """``int_0^t f*(s) ds``."""
    return running_integrator(fstar, tol)(t)


def maximal_function(fstar: OneDimFunction) -> OneDimFunction:
    """``f**(t) = (1/t) int_0^t f*(s) ds``."""
    F = running_integrator(fstar)
    c, e = fstar.head
    head = Hint(c / (e + 1), e) if (c > 0 and e < 0) else Hint(c, 0.0)
    tc, te = fstar.tail
    if tc == 0:
        last = fstar.breakpoints[-1] if fstar.breakpoints else 0.0
        tail = Hint(F(last), -1.0) if last > 0 else ZERO_HINT
    elif te == 0:
        tail = Hint(tc, 0.0)
    elif te < -1:
        if not isinstance(fstar, PiecewiseOneDim):
            raise DomainError("maximal function tail unavailable for this input")
        tail = Hint(F(math.inf), -1.0)
    elif te > -1:
        tail = Hint(tc / (te + 1), te)
    else:
        raise DomainError("f** of a 1/t tail is not a power law")

    def fss(t):
        return F(t) / t

    # the running integral is continuous, so f** keeps the breakpoints of f*
    return FunctionOneDim(fss, fstar.breakpoints, head, tail)


def equivalent_norm(fstar: OneDimFunction, p: float, q: float, domain_measure: float,
                    tol=DEFAULT_TOL) -> QuadResult:
    """``|||f|||_{p,q} = || t^(1/p - 1/q) f**(t) ||_{L^q(0, domain_measure)}``."""
    if not p > 1:
        raise DomainError("the maximal-function norm needs p > 1")
    if math.isinf(q):
        raise DomainError("equivalent_norm is defined for finite q")
    try:
        fss = maximal_function(fstar)
    except DivergenceError:
        return QuadResult.divergent()
    return lorentz_quasinorm(fss, p, q, upper=domain_measure, tol=tol)


def hlp_majorization(fstar: OneDimFunction, gstar: OneDimFunction, domain_measure: float,
                     grid: int = 512) -> bool:
    """Hardy-Littlewood-Polya relation ``f < g`` on ``(0, domain_measure)``."""
    Ff, Fg = running_integrator(fstar), running_integrator(gstar)
    ts = [domain_measure * k / grid for k in range(1, grid + 1)]
    ff = [Ff(t) for t in ts]
    gg = [Fg(t) for t in ts]
    scale = max(abs(ff[-1]), abs(gg[-1]))
    band = 1e-10 * (1.0 + scale)
    if any(a > b + band for a, b in zip(ff, gg)):
        return False
    return abs(ff[-1] - gg[-1]) <= 1e-10 * max(scale, 1e-300)
