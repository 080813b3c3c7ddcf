"""Extremal objects for the Sobolev-Lorentz inequality.

* ``v_eps`` -- power core ``r^-(a-eps)`` capped by a tangent line, with
  ``a = (n-p)/p``; its norm ratio tends to the sharp value as ``eps -> 0``.
* ``psi = r^-a`` -- attains the sharp constant in the weak (``q = inf``)
  inequality.
* helpers producing the evidence tables for attainment and non-attainment.
"""

from __future__ import annotations

import csv
import io
import math
from typing import NamedTuple, Sequence

from .errors import DomainError
from ._io import fmt
from ._quad import DEFAULT_TOL
from .inequalities import sharp_constant, target_norm, verify_embedding
from .lorentz import LorentzParams
from .profile import PowerAffineSegment, RadialProfile, single_power

DEFAULT_EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
MIN_EPSILON = 1e-8


def _core_exponent(epsilon: float, params: LorentzParams) -> float:
    a = params.hardy_exponent
    if not (0 < epsilon < a):
        raise DomainError(f"epsilon must lie in (0, {a}), got {epsilon}")
    return a - epsilon


def make_v_eps(epsilon: float, params: LorentzParams) -> RadialProfile:
    """``r^-(a-eps)`` on ``(0,1)``, ``1 - (a-eps)(r-1)`` up to ``1 + 1/(a-eps)``, then 0."""
    b = _core_exponent(epsilon, params)
    end = 1 + 1 / b
    return RadialProfile([
        PowerAffineSegment(1.0, -b, 0.0, 0.0, 1.0),
        PowerAffineSegment(-b, 1.0, 1 + b, 1.0, end),
        PowerAffineSegment(0.0, 0.0, 0.0, end, math.inf),
    ])


def grad_norm_closed_form(epsilon: float, params: LorentzParams) -> float:
    """``||grad v_eps||_{p,q}^q`` in closed form.

    ``|grad v_eps|*`` is ``b (t/omega)^(-(b+1)/n)`` on ``(0, omega)`` and the
    constant ``b`` up to ``omega (1+1/b)^n``, with ``b = a - eps``, giving
    ``n omega^(q/p) b^q [1/(eps q) + (p/(n q)) ((1/b + 1)^(n q/p) - 1)]``.
    The bracket is assembled before the vanishing prefactor is applied.
    """
    n, p, q = params.n, params.p, params.q
    if math.isinf(q):
        raise DomainError("closed form is for finite q")
    b = _core_exponent(epsilon, params)
    bracket = 1 / (epsilon * q) + p / (n * q) * math.expm1(n * q / p * math.log1p(1 / b))
    return n * params.omega ** (q / p) * b ** q * bracket


def grad_norm_display(epsilon: float, params: LorentzParams) -> float:
    """``n omega^(q/p) b^q (1/q) [1/eps + (p/q)(1/b + 1)^(n q/p) - p/q]``, ``b = a - eps``.

    This variant has the cap contribution weighted by ``p/q`` in place of
    ``p/n``; it coincides with :func:`grad_norm_closed_form` only when
    ``q = n``. Kept for comparison.
    """
    n, p, q = params.n, params.p, params.q
    b = _core_exponent(epsilon, params)
    bracket = 1 / epsilon + p / q * (1 / b + 1) ** (n * q / p) - p / q
    return n * params.omega ** (q / p) * b ** q * bracket / q


class SweepRow(NamedTuple):
    epsilon: float
    ratio: float
    limit: float
    rel_err: float


def sweep_limit(params: LorentzParams) -> float:
    """``omega_n^(1/n) (n-p)/p``, the reciprocal of the sharp constant."""
    return params.omega ** (1 / params.n) * params.hardy_exponent


def epsilon_sweep(params: LorentzParams, epsilons: Sequence[float] = DEFAULT_EPSILONS,
                  tol: float = DEFAULT_TOL):
    """Rows ``(eps, ||grad v_eps||_{p,q} / ||v_eps||_{p*,q}, limit, rel_err)``.

    The numerator is the closed form, the denominator quadrature.
    """
    if math.isinf(params.q):
        raise DomainError("the sweep is for finite q")
    limit = sweep_limit(params)
    rows = []
    for eps in epsilons:
        if eps < MIN_EPSILON:
            raise DomainError(f"epsilon below {MIN_EPSILON} loses all precision")
        num = grad_norm_closed_form(eps, params) ** (1 / params.q)
        den = target_norm(make_v_eps(eps, params), params, tol=tol)
        ratio = num / den.value
        rows.append(SweepRow(eps, ratio, limit, abs(ratio - limit) / limit))
    return rows


def sweep_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SweepRow._fields)
    for r in rows:
        w.writerow([fmt(float(x)) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# psi and relatives
# ---------------------------------------------------------------------------


def make_psi(params: LorentzParams) -> RadialProfile:
    """``r^-(n-p)/p`` on the whole half-line."""
    return single_power(1.0, -params.hardy_exponent)


def psi_target_weak(params: LorentzParams) -> float:
    """``||psi||_{p*,inf} = omega_n^(1/p*)``."""
    return params.omega ** (1 / params.p_star)


def psi_gradient_weak(params: LorentzParams) -> float:
    """``||grad psi||_{p,inf} = omega_n^(1/p) (n-p)/p``."""
    return params.omega ** (1 / params.p) * params.hardy_exponent


def psi_truncation(params: LorentzParams, inner: float, outer: float) -> RadialProfile:
    """``psi`` flattened to ``psi(inner)`` below ``inner`` and closed off past ``outer``.

    Past ``outer`` the tangent line of ``psi`` is followed down to zero,
    reached at ``outer (1 + 1/a)``.
    """
    if not 0 < inner < outer:
        raise DomainError("need 0 < inner < outer")
    a = params.hardy_exponent
    top = inner ** -a
    edge = outer ** -a
    end = outer * (1 + 1 / a)
    slope = a * outer ** (-a - 1)
    return RadialProfile([
        PowerAffineSegment(0.0, 0.0, top, 0.0, inner),
        PowerAffineSegment(1.0, -a, 0.0, inner, outer),
        PowerAffineSegment(-slope, 1.0, edge + slope * outer, outer, end),
        PowerAffineSegment(0.0, 0.0, 0.0, end, math.inf),
    ])


def shifted_psi(params: LorentzParams, radius: float = 1.0) -> RadialProfile:
    """``(psi(r) - psi(radius))_+``: compactly supported, behaves like ``psi`` at 0.

    Its gradient coincides with that of ``psi`` inside the ball and
    vanishes outside, so it also attains the weak-type constant.
    """
    if not radius > 0:
        raise DomainError("radius must be positive")
    a = params.hardy_exponent
    return RadialProfile([
        PowerAffineSegment(1.0, -a, -(radius ** -a), 0.0, radius),
        PowerAffineSegment(0.0, 0.0, 0.0, radius, math.inf),
    ])


class EvidenceRow(NamedTuple):
    profile_id: str
    ratio: float
    margin: float
    quad_error: float


def non_attainment_evidence(params: LorentzParams, family, tol: float = DEFAULT_TOL) -> list:
    """``(profile_id, ratio, margin, quad_error)`` for each ``(id, profile)`` in ``family``.

    For finite ``q`` every margin is expected to be positive.
    """
    if math.isinf(params.q):
        raise DomainError("non-attainment concerns finite q")
    rows = []
    for ident, u in family:
        rep = verify_embedding(u, params, tol=tol)
        rows.append(EvidenceRow(str(ident), rep.ratio, rep.margin, rep.quad_error))
    return rows


def default_family(params: LorentzParams):
    """``v_eps`` for ``eps`` at 80, 40, 20 and 10 percent of ``(n-p)/p``."""
    a = params.hardy_exponent
    return [(f"v_eps:{f * a:.6g}", make_v_eps(f * a, params)) for f in (0.8, 0.4, 0.2, 0.1)]


def evidence_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EvidenceRow._fields)
    for r in rows:
        w.writerow([r.profile_id, fmt(r.ratio), fmt(r.margin), fmt(r.quad_error)])
    return buf.getvalue()


def attainment_reports(params: LorentzParams, radius: float = 1.0):
    """Weak-type reports for ``psi`` (exact and generic paths) and :func:`shifted_psi`."""
    weak = params.with_q(math.inf)
    return [
        ("psi", verify_embedding(make_psi(weak), weak)),
        ("psi_generic", verify_embedding(make_psi(weak), weak, method="generic")),
        (f"shifted_psi:{radius:.6g}", verify_embedding(shifted_psi(weak, radius), weak)),
    ]


__all__ = [
    "DEFAULT_EPSILONS", "EvidenceRow", "SweepRow", "attainment_reports", "default_family",
    "epsilon_sweep", "evidence_to_csv", "grad_norm_closed_form", "grad_norm_display",
    "make_psi", "make_v_eps", "non_attainment_evidence", "psi_gradient_weak",
    "psi_target_weak", "psi_truncation", "sharp_constant", "shifted_psi", "sweep_limit",
    "sweep_to_csv",
]
