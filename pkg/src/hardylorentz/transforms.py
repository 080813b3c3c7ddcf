"""Constructive transforms of radial profiles and their norm identities.

* :func:`dilate` -- ``u_lam(r) = u(lam r)``;
* :func:`power_transform` -- ``v(r) = u(r^(p/q))^(q/p)``, which moves a
  ``L^{p*,q}`` function into ``L^{p*,p}``;
* :func:`gamma_weighted_norm` -- ``L^gamma`` norms of ``r^(n/p*) u(r)``
  whose limit as ``gamma -> inf`` is the weak norm;
* :func:`hardy_auxiliary` -- ``v(r) = int_r^1 rho^(-n/p) int_rho^1 |u'|^p t^(n-1) dt drho``
  and the pointwise bound on ``u^p`` it produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._quad import DEFAULT_TOL, integrate_logaxis, maximize_log, power_affine_moment
from .errors import DivergenceError, DomainError
from .lorentz import LorentzParams, QuadResult
from .profile import ZERO_HINT, Hint, PowerAffineSegment, RadialFunction, RadialProfile

_KINDS = ("dilation", "power_composition", "gamma_weighted", "hardy_auxiliary")


@dataclass(frozen=True)
class TransformedPair:
    source: RadialFunction
    image: RadialFunction
    params: LorentzParams
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")


# ---------------------------------------------------------------------------
# radial integrals of general radial functions
# ---------------------------------------------------------------------------


def _moment_panels(func, breakpoints, head, tail, m, k, tol):
    c, e = head
    if c > 0 and e * m + k <= 0:
        raise DivergenceError("radial integral diverges at r = 0", side="zero")
    edges = [0.0] + list(breakpoints)
    c, e = tail
    if c > 0:
        if e * m + k >= 0:
            raise DivergenceError("radial integral diverges at r = inf", side="infinity")
        edges.append(math.inf)
    elif len(edges) == 1:
        edges.append(math.inf)

    def g(s):
        v = func(math.exp(s))
        if v <= 0:
            return 0.0
        return math.exp(m * math.log(v) + k * s)

    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, ee = integrate_logaxis(g, a, b, tol)
        total += v
        err += ee
    return total, err


def radial_moment(f: RadialFunction, m: float, k: float, tol=DEFAULT_TOL):
    """``int_0^inf f(r)^m r^(k-1) dr`` as ``(value, abs_error)``.

    Raises :class:`DivergenceError` when the hints show the integral is infinite.
    """
    if isinstance(f, RadialProfile):
        return f.radial_moment(m, k, tol=tol)
    return _moment_panels(f, f.breakpoints, f.head, f.tail, m, k, tol)


def gradient_moment(f: RadialFunction, m: float, k: float, tol=DEFAULT_TOL):
    """``int_0^inf |f'(r)|^m r^(k-1) dr`` as ``(value, abs_error)``."""
    if isinstance(f, RadialProfile):
        return f.gradient_profile().radial_moment(m, k, tol=tol)
    c, e = f.tail
    tail = Hint(abs(c * e), e - 1) if (c > 0 and e != 0) else ZERO_HINT
    return _moment_panels(f.derivative_magnitude, f.breakpoints, f.gradient_head(), tail,
                          m, k, tol)


def gradient_lp_power(f: RadialFunction, n: int, p: float, tol=DEFAULT_TOL) -> QuadResult:
    """``||grad f||_p^p = n omega_n int |f'|^p r^(n-1) dr``."""
    from .rearrange import DimensionContext

    try:
        val, err = gradient_moment(f, p, n, tol)
    except DivergenceError:
        return QuadResult.divergent()
    area = DimensionContext(n).sphere_area
    return QuadResult(area * val, area * err)


def _clipped_gradient_moment(u: RadialProfile, m, k, lo, hi, tol=DEFAULT_TOL):
    total = 0.0
    for seg in u.gradient_profile().segments:
        a, b = max(seg.lo, lo), min(seg.hi, hi)
        if b > a:
            total += power_affine_moment(seg.c, seg.alpha, seg.d, a, b, m, k, True, tol)[0]
    return total


# ---------------------------------------------------------------------------
# dilation and power composition
# ---------------------------------------------------------------------------


def dilate(u: RadialProfile, lam: float) -> RadialProfile:
    """``r -> u(lam r)``, exact in the power-affine class."""
    return u.dilate(lam)


def _segment_transform(seg: PowerAffineSegment, s: float, e: float):
    """Image of one segment under ``v(r) = seg(r^s)^e`` when it stays power-affine."""
    lo, hi = seg.lo ** (1 / s), seg.hi ** (1 / s)
    if seg.is_constant:
        return PowerAffineSegment(0.0, 0.0, seg.value(1.0) ** e, lo, hi)
    if seg.d == 0:
        return PowerAffineSegment(seg.c ** e, seg.alpha, 0.0, lo, hi)
    return None


def power_transform(u: RadialProfile, params: LorentzParams) -> RadialFunction:
    """``v(r) = u(r^(p/q))^(q/p)`` for ``p < q < inf``.

    Pure powers are fixed points. Constant and pure power pieces stay
    power-affine; if every piece does, a :class:`RadialProfile` is
    returned, otherwise a :class:`RadialFunction` carrying the endpoint
    hints ``(coef^(q/p), expo)`` of ``u``.
    """
    p, q = params.p, params.q
    if math.isinf(q) or not q > p:
        raise DomainError(f"power transform needs p < q < inf, got p={p}, q={q}")
    if not u.is_decreasing():
        raise DomainError("power transform needs a non-increasing profile")
    s, e = p / q, q / p
    images = [_segment_transform(seg, s, e) for seg in u.segments]
    if all(im is not None for im in images):
        return RadialProfile(images)

    segs = u.segments

    def locate(r):
        x = r ** s
        return x, segs[u.segment_index(x)]

    def func(r):
        x, seg = locate(r)
        return max(seg.value(x), 0.0) ** e

    def deriv(r):
        x, seg = locate(r)
        val = max(seg.value(x), 0.0)
        if val == 0:
            return 0.0
        return val ** (e - 1) * seg.slope(x) * x / r

    hc, he = u.head
    head = Hint(hc ** e, he)
    deriv_head = None
    first = segs[0]
    if he == 0 and not first.is_constant:
        # bounded at 0 with a non-constant first piece: |v'| ~ u(0)^(e-1) |c alpha| r^(s alpha - 1)
        deriv_head = Hint(hc ** (e - 1) * abs(first.c * first.alpha), s * first.alpha - 1)
    elif he == 0:
        deriv_head = ZERO_HINT
    tc, te = u.tail
    tail = Hint(tc ** e, te) if tc > 0 else ZERO_HINT
    return RadialFunction(
        func,
        breakpoints=[b ** (1 / s) for b in u.breakpoints],
        head=head,
        tail=tail,
        deriv=deriv,
        decreasing=True,
        deriv_head=deriv_head,
    )


def power_transform_gradient_lp(u: RadialProfile, params: LorentzParams,
                                tol=DEFAULT_TOL) -> QuadResult:
    """``||grad v||_p^p`` for ``v = power_transform(u)``, by substituting ``r = rho^(q/p)``.

    After the substitution the integrand on each piece of ``u`` is
    ``(q/p) |c alpha|^p (c rho^alpha + d)^(q-p) rho^(p alpha - q + q n/p - 1)``,
    an independent route to the same number as quadrature of ``|v'|``.
    """
    n, p, q = params.n, params.p, params.q
    if math.isinf(q) or not q > p:
        raise DomainError(f"power transform needs p < q < inf, got p={p}, q={q}")
    total, err = 0.0, 0.0
    try:
        for seg in u.segments:
            if seg.is_constant:
                continue
            w = abs(seg.c * seg.alpha) ** p
            v, ee = power_affine_moment(seg.c, seg.alpha, seg.d, seg.lo, seg.hi, q - p,
                                        p * seg.alpha - q + q * n / p, True, tol)
            total += w * v
            err += w * ee
    except DivergenceError:
        return QuadResult.divergent()
    k = params.ctx.sphere_area * q / p
    return QuadResult(k * total, k * err)


# ---------------------------------------------------------------------------
# gamma approximation of the weak norm
# ---------------------------------------------------------------------------


def gamma_weighted_norm(u: RadialProfile, params: LorentzParams, gamma: float,
                        tol=DEFAULT_TOL) -> QuadResult:
    """``(int_0^inf [u(r) r^((n-p)/p + 1/gamma)]^gamma dr/r)^(1/gamma)``.

    As ``gamma -> inf`` this tends to ``sup_r r^((n-p)/p) u(r)``.
    """
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    a = params.hardy_exponent
    try:
        val, err = radial_moment(u, gamma, gamma * a + 1, tol)
    except DivergenceError:
        return QuadResult.divergent()
    if val <= 0:
        return QuadResult(0.0, err ** (1 / gamma))
    norm = val ** (1 / gamma)
    return QuadResult(norm, norm * err / (gamma * val))


def weighted_sup(u: RadialProfile, params: LorentzParams) -> float:
    """``sup_r r^((n-p)/p) u(r)``, the limit of :func:`gamma_weighted_norm`."""
    a = params.hardy_exponent
    best = 0.0
    for seg in u.segments:
        lo = seg.lo if seg.lo > 0 else (seg.hi if math.isfinite(seg.hi) else 1.0) * 1e-12
        hi = seg.hi if math.isfinite(seg.hi) else lo * 1e12

        def g(r, seg=seg):
            return r ** a * max(seg.value(r), 0.0)

        best = max(best, maximize_log(g, lo, hi * (1 - 1e-15), samples=256))
    return best


# ---------------------------------------------------------------------------
# Hardy auxiliary function
# ---------------------------------------------------------------------------


def _check_hardy_input(u: RadialProfile, params: LorentzParams):
    if not params.p > 1:
        raise DomainError("the Hardy auxiliary construction needs p > 1")
    if not isinstance(u, RadialProfile):
        raise DomainError("a power-affine profile is required")
    if not u.is_decreasing():
        raise DomainError("profile must be non-increasing")
    if u.support_radius() > 1 + 1e-12:
        raise DomainError(f"support radius {u.support_radius()} exceeds the unit ball")
    for i, seg in enumerate(u.segments):
        if not seg.is_constant and seg.alpha < 1 and seg.lo == 0:
            raise DomainError(f"segment {i} has unbounded slope at 0 (not Lipschitz)")
        if i + 1 < len(u.segments):
            left, right = seg.right_limit(), u.segments[i + 1].left_limit()
            if abs(left - right) > 1e-12 * max(1.0, abs(left)):
                raise DomainError(f"jump after segment {i} (not Lipschitz)")


class HardyAuxiliary(RadialFunction):
    """``v(r) = int_r^1 rho^(-n/p) W(rho) drho`` with ``W(rho) = int_rho^1 |u'|^p t^(n-1) dt``.

    ``W`` is exact per segment; the outer integral is adaptive quadrature,
    anchored at the breakpoints so each evaluation integrates one panel.
    """

    def __init__(self, u: RadialProfile, params: LorentzParams, tol=DEFAULT_TOL):
        _check_hardy_input(u, params)
        self.u = u
        self.params = params
        self.tol = tol
        n, p = params.n, params.p
        self._np = n / p
        self._grad = u.gradient_profile()
        self.total = self.W(0.0)
        nodes = sorted({b for b in u.breakpoints if 0 < b < 1} | {1.0}, reverse=True)
        self._nodes = nodes
        vals = [0.0]
        for hi, lo in zip(nodes, nodes[1:]):
            vals.append(vals[-1] + self._outer(lo, hi))
        self._node_vals = vals
        super().__init__(
            self._value,
            breakpoints=nodes,
            head=Hint(self.total * p / (n - p), -(n - p) / p),
            tail=ZERO_HINT,
            deriv=self._deriv,
            decreasing=True,
        )

    def W(self, rho: float) -> float:
        """``int_rho^1 |u'(t)|^p t^(n-1) dt``."""
        if rho >= 1:
            return 0.0
        return _clipped_gradient_moment(self.u, self.params.p, self.params.n, rho, 1.0)

    def _outer(self, lo, hi):
        np_ = self._np

        def g(s):
            r = math.exp(s)
            return r ** (1 - np_) * self.W(r)

        return integrate_logaxis(g, lo, hi, self.tol)[0]

    def _value(self, r):
        if r >= 1:
            return 0.0
        for node, val in zip(self._nodes, self._node_vals):
            if node <= r:
                continue
            # node is the smallest tabulated radius above r once the loop ends
            last_node, last_val = node, val
        return last_val + self._outer(r, last_node)

    def _deriv(self, r):
        if r >= 1:
            return 0.0
        return -(r ** -self._np) * self.W(r)

    def weak_identity(self) -> tuple[float, float]:
        """``(sup_{0<r<1} |v'(r)| r^(n/p), int_0^1 |u'|^p t^(n-1) dt)``.

        The supremum is searched numerically over ``r`` in ``[1e-12, 1)``.
        """
        sup = maximize_log(lambda r: abs(self._deriv(r)) * r ** self._np, 1e-12, 1 - 1e-15,
                           samples=256)
        return sup, self.total


def hardy_auxiliary(u: RadialProfile, params: LorentzParams, tol=DEFAULT_TOL) -> HardyAuxiliary:
    """Auxiliary function of the Hardy chain for a Lipschitz ``u`` vanishing on ``|x| >= 1``."""
    return HardyAuxiliary(u, params, tol)


def pointwise_hardy_bound(u: RadialProfile, params: LorentzParams, rho: float):
    """``(u(rho)^p, (p/(n-p))^(p-1) rho^(-(n-p)(p-1)/p) int_rho^1 |u'|^p t^((p-1)n/p) dt)``.

    The first entry never exceeds the second.
    """
    _check_hardy_input(u, params)
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    n, p = params.n, params.p
    lhs = u(rho) ** p
    integral = _clipped_gradient_moment(u, p, (p - 1) * n / p + 1, rho, 1.0)
    rhs = (p / (n - p)) ** (p - 1) * rho ** (-(n - p) * (p - 1) / p) * integral
    return lhs, rhs
