"""The invariant corpus run by ``hardylorentz props``.

Each check returns a :class:`CheckResult`; a run fails if any result has
``passed == False``. Sizes default to the full corpus and can be reduced
for quick runs.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .corpus import COMPACT_KINDS, corpus, random_profile, unit_support
from .errors import DivergenceError
from .extremals import (
    epsilon_sweep,
    sweep_limit,
    grad_norm_closed_form,
    make_psi,
    make_v_eps,
    psi_gradient_weak,
    psi_target_weak,
)
from .inequalities import (
    gradient_norm,
    sharp_constant,
    sharp_constant_gamma_form,
    target_norm,
    verify_embedding,
    verify_hardy,
)
from .lorentz import (
    LorentzParams,
    equivalent_norm,
    hlp_majorization,
    lorentz_integral,
    lorentz_quasinorm,
    maximal_function,
    weak_norm,
)
from .profile import RadialFunction
from .rearrange import (
    SampledFunction,
    decreasing_rearrangement,
    rearrange_sampled,
    sample_radial,
)
from .transforms import (
    gamma_weighted_norm,
    gradient_lp_power,
    dilate,
    hardy_auxiliary,
    pointwise_hardy_bound,
    power_transform,
    power_transform_gradient_lp,
)

EMBEDDING_TRIPLES = ((3, 2, 2), (3, 2, 4), (3, 2, math.inf), (4, 2, 3), (5, 3, 5))


class CheckResult(NamedTuple):
    name: str
    passed: bool
    cases: int
    detail: str = ""


def _result(name, failures, cases, worst=None):
    detail = f"worst={worst:.3g}" if worst is not None else ""
    if failures:
        detail = f"{failures[0]}" + (f" (+{len(failures) - 1} more)" if len(failures) > 1 else "")
    return CheckResult(name, not failures, cases, detail)


# ---------------------------------------------------------------------------
# sampled rearrangement axioms
# ---------------------------------------------------------------------------


def random_sampled(rng: np.random.Generator, size: int | None = None) -> SampledFunction:
    n = int(rng.integers(5, 65)) if size is None else size
    if rng.random() < 0.3:
        vals = rng.integers(0, 6, size=n).astype(float)  # many ties
    else:
        vals = rng.exponential(1.0, size=n)
    return SampledFunction(tuple(vals), float(rng.uniform(0.1, 2.0)))


def _doubly_stochastic_image(rng, g: np.ndarray) -> np.ndarray:
    weights = rng.dirichlet(np.ones(3))
    return sum(w * g[rng.permutation(len(g))] for w in weights)


def check_sampled_axioms(count: int = 500, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    fails = {k: [] for k in ("homogeneity", "subadditivity", "monotonicity", "cavalieri",
                             "hardy_littlewood", "majorization", "lipschitz")}
    for case in range(count):
        f = random_sampled(rng)
        h = f.cell_measure
        fs = np.array(rearrange_sampled(f).values)
        x = f.array
        size = len(x)

        for lam in (-2.0, 0.5, 3.0):
            lhs = np.array(rearrange_sampled(SampledFunction(tuple(abs(lam) * x), h)).values)
            if not np.allclose(lhs, abs(lam) * fs, rtol=1e-14, atol=0):
                fails["homogeneity"].append(case)

        g = SampledFunction(tuple(rng.exponential(1.0, size=size)), h)
        gs = np.array(rearrange_sampled(g).values)
        ss = np.array(rearrange_sampled(SampledFunction(tuple(x + g.array), h)).values)
        for _ in range(20):
            i, j = (int(v) for v in rng.integers(0, size, size=2))
            if i + j < size and ss[i + j] > fs[i] + gs[j] + 1e-12 * (fs[i] + gs[j]):
                fails["subadditivity"].append(case)

        bigger = x + rng.exponential(1.0, size=size) * (rng.random(size) < 0.5)
        bs = np.array(rearrange_sampled(SampledFunction(tuple(bigger), h)).values)
        if np.any(fs > bs):
            fails["monotonicity"].append(case)

        for A in (lambda s: s, np.square, np.sqrt):
            a, b = math.fsum(A(x) * h), math.fsum(A(fs) * h)
            if not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-300):
                fails["cavalieri"].append(case)

        if math.fsum(x * g.array) > math.fsum(fs * gs) * (1 + 1e-12):
            fails["hardy_littlewood"].append(case)

        small = SampledFunction(tuple(_doubly_stochastic_image(rng, x)), h)
        F, G = small.as_step_function(), f.as_step_function()
        total = f.total_measure
        ok = hlp_majorization(F, G, total)
        if ok:
            Fss, Gss = maximal_function(F), maximal_function(G)
            scale = max(fs[0], 1.0)
            for k in range(1, 513):
                t = total * k / 512
                if Fss(t) > Gss(t) + 1e-12 * scale:
                    ok = False
                    break
        if not ok:
            fails["majorization"].append(case)

        if rearrange_sampled(f).lipschitz_constant() > f.lipschitz_constant() * (1 + 1e-12):
            fails["lipschitz"].append(case)
    return [_result(f"sampled_{k}", v, count) for k, v in fails.items()]


# ---------------------------------------------------------------------------
# closed-form anchors
# ---------------------------------------------------------------------------


def check_sharp_constant_forms() -> CheckResult:
    fails, cases = [], 0
    for n in range(2, 11):
        for p in sorted({1, 2, min(3, n - 1)}):
            if p >= n:
                continue
            P = LorentzParams(n, p)
            cases += 1
            if abs(sharp_constant(P) - sharp_constant_gamma_form(P)) > 1e-14:
                fails.append((n, p))
    return _result("sharp_constant_forms", fails, cases)


def check_psi_equality() -> CheckResult:
    fails, cases = [], 0
    for n, p in ((3, 2), (4, 2), (5, 3), (2, 1)):
        P = LorentzParams(n, p, math.inf)
        psi = make_psi(P)
        closed = psi_target_weak(P) / psi_gradient_weak(P)
        for method, tol in (("auto", 1e-12), ("generic", 1e-8)):
            cases += 1
            rep = verify_embedding(psi, P, method=method)
            if abs(rep.margin) > tol or abs(closed - sharp_constant(P)) > 1e-12:
                fails.append((n, p, method, rep.margin))
    return _result("psi_equality", fails, cases)


def check_dual_path() -> CheckResult:
    fails, cases, worst = [], 0, 0.0
    for eps in (0.05, 0.1, 0.2):
        for q in (2, 4, 6):
            P = LorentzParams(3, 2, q)
            gs = decreasing_rearrangement(make_v_eps(eps, P).gradient_profile(), P.ctx,
                                          method="generic")
            quad, _ = lorentz_integral(gs, P.p, q, closed_form=False)
            rel = abs(quad / grad_norm_closed_form(eps, P) - 1)
            worst = max(worst, rel)
            cases += 1
            if rel > 1e-7:
                fails.append((eps, q, rel))
    return _result("dual_path_oracle", fails, cases, worst)


def check_sweep() -> CheckResult:
    fails, cases = [], 0
    for n, p, q in ((3, 2, 4), (4, 2, 3)):
        P = LorentzParams(n, p, q)
        rows = epsilon_sweep(P, [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
        cases += 1
        if abs(sweep_limit(P) * sharp_constant(P) - 1) > 1e-12:
            fails.append((n, p, q, "limit"))
        errs = [r.rel_err for r in rows]
        if errs[-1] > 2e-3 or any(b >= a for a, b in zip(errs, errs[1:])):
            fails.append((n, p, q, errs))
    return _result("epsilon_sweep", fails, cases)


# ---------------------------------------------------------------------------
# corpus checks
# ---------------------------------------------------------------------------


def check_embedding_corpus(size: int = 200, seed: int = 0) -> CheckResult:
    fails, cases = [], 0
    for n, p, q in EMBEDDING_TRIPLES:
        P = LorentzParams(n, p, q)
        for item in corpus(n, p, size, seed):
            cases += 1
            rep = verify_embedding(item.profile, P)
            if rep.margin < -10 * rep.quad_error or not rep.holds:
                fails.append((item.ident, (n, p, q), rep.margin))
    return _result("embedding_corpus", fails, cases)


def check_hardy_corpus(size: int = 200, seed: int = 0, rhos: int = 20) -> CheckResult:
    P = LorentzParams(3, 2)
    rng = np.random.default_rng(seed)
    fails, cases = [], 0
    for item in corpus(3, 2, size, seed, kinds=COMPACT_KINDS):
        cases += 1
        rep = verify_hardy(item.profile, P)
        weak = verify_embedding(item.profile, P)
        if not (rep.holds and rep.ratio <= 1 and weak.holds):
            fails.append((item.ident, "ratio", rep.ratio))
        if item.kind != "compact":
            continue
        u = unit_support(item.profile)
        for rho in rng.uniform(0, 1, rhos):
            lhs, rhs = pointwise_hardy_bound(u, P, float(rho))
            if lhs > rhs:
                fails.append((item.ident, "pointwise", float(rho)))
        v = hardy_auxiliary(u, P)
        sup, total = v.weak_identity()
        if v(1.0) != 0 or abs(sup - total) > 1e-8 * max(total, 1.0):
            fails.append((item.ident, "auxiliary", sup, total))
        weighted = [abs(v.derivative(r)) * r ** (P.n / P.p) for r in np.linspace(0.01, 0.99, 64)]
        if any(b > a * (1 + 1e-12) for a, b in zip(weighted, weighted[1:])):
            fails.append((item.ident, "auxiliary_monotone"))
    return _result("hardy_corpus", fails, cases)


def check_transform_identities(size: int = 50, seed: int = 0) -> CheckResult:
    P = LorentzParams(3, 2, 4)
    n, p, q = P.n, P.p, P.q
    w, ps = P.omega, P.p_star
    fails, worst = [], 0.0
    for item in corpus(n, p, size, seed):
        u = item.profile
        v = power_transform(u, P)
        un = target_norm(u, P).value
        lhs = target_norm(v, P.with_q(p)).value
        rhs = (q / p) ** (1 / p) * w ** ((p - q) / (p * ps)) * un ** (q / p)
        rel = abs(lhs / rhs - 1)
        worst = max(worst, rel)
        if rel > 1e-7:
            fails.append((item.ident, "norm", rel))
        grad_v = gradient_lp_power(v, n, p).value ** (1 / p)
        bound = (q / p) ** (1 / p) * w ** (-(n - p) * (q - p) / (n * p * p)) \
            * un ** ((q - p) / p) * gradient_norm(u, P).value
        if grad_v > bound:
            fails.append((item.ident, "gradient", grad_v, bound))
        alt = power_transform_gradient_lp(u, P).value ** (1 / p)
        if abs(alt / grad_v - 1) > 1e-8:
            fails.append((item.ident, "gradient_paths", grad_v, alt))
    psi = make_psi(P)
    image = power_transform(psi, P)
    for r in np.geomspace(1e-3, 1e3, 16):
        if not math.isclose(image(r), psi(r), rel_tol=1e-13):
            fails.append(("psi", "fixed_point", float(r)))
            break
    return _result("transform_identities", fails, size, worst)


def check_gamma_example() -> CheckResult:
    P = LorentzParams(3, 2)
    u = make_v_eps(0.1, P)
    limit = P.omega ** (-1 / P.p_star) * target_norm(u, P).value
    vals = [gamma_weighted_norm(u, P, g).value for g in (8, 32, 128)]
    fails = []
    if abs(vals[2] / limit - 1) > 0.01:
        fails.append(("gamma128", vals[2], limit))
    if abs(vals[2] - vals[1]) >= abs(vals[1] - limit):
        fails.append(("ordering", vals, limit))
    return _result("gamma_limit_v_eps", fails, 1)


def _relative_spread(values):
    return (max(values) - min(values)) / abs(max(values))


def check_scaling(size: int = 10, seed: int = 0, lams=(0.1, 1.0, 10.0)) -> CheckResult:
    fails, worst = [], 0.0
    profiles = [(item.ident, item.profile) for item in corpus(3, 2, size, seed)]
    profiles.append(("v_eps:0.1", make_v_eps(0.1, LorentzParams(3, 2))))
    for ident, u in profiles:
        for q in (4, math.inf):
            P = LorentzParams(3, 2, q)
            ratios = [verify_embedding(dilate(u, lam), P).ratio for lam in lams]
            spread = _relative_spread(ratios)
            worst = max(worst, spread)
            if spread > 1e-9:
                fails.append((ident, q, spread))
        hardy = [verify_hardy(dilate(u, lam), LorentzParams(3, 2)).ratio for lam in lams]
        spread = _relative_spread(hardy)
        worst = max(worst, spread)
        if spread > 1e-9:
            fails.append((ident, "hardy", spread))
    return _result("scaling_invariance", fails, len(profiles), worst)


def check_lp_agreement(size: int = 50, seed: int = 0) -> CheckResult:
    """For ``p = q`` the Lorentz norm is the ``L^p`` norm."""
    fails, worst = [], 0.0
    for item in corpus(3, 2, size, seed):
        P = LorentzParams(3, 2)
        for p in (2.0, 6.0):
            lor = lorentz_quasinorm(decreasing_rearrangement(item.profile, P.ctx), p, p)
            try:
                direct = (P.ctx.sphere_area * item.profile.radial_moment(p, 3)[0]) ** (1 / p)
            except DivergenceError:
                # both routes must agree that the norm is infinite
                if not lor.diverged:
                    fails.append((item.ident, p, "divergence missed"))
                continue
            rel = abs(lor.value / direct - 1)
            worst = max(worst, rel)
            if rel > 1e-8:
                fails.append((item.ident, p, rel))
    return _result("lorentz_lp_agreement", fails, size, worst)


def check_maximal(size: int = 50, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    fails = []
    for item in corpus(3, 2, size, seed):
        P = LorentzParams(3, 2)
        fstar = decreasing_rearrangement(item.profile, P.ctx)
        fss = maximal_function(fstar)
        for t in rng.uniform(0.01, 200.0, 64):
            if fss(t) < fstar(t) * (1 - 1e-12):
                fails.append((item.ident, "pointwise", float(t)))
                break
        D = float(rng.uniform(1.0, 100.0))
        eq = equivalent_norm(fstar, 2.0, 3.0, D)
        plain = lorentz_quasinorm(fstar, 2.0, 3.0, upper=D)
        if eq.value < plain.value * (1 - 1e-10):
            fails.append((item.ident, "equivalent", eq.value, plain.value))
    return _result("maximal_function", fails, size)


def check_quadrature_consistency(size: int = 20, seed: int = 0) -> CheckResult:
    fails = []
    for item in corpus(3, 2, size, seed):
        P = LorentzParams(3, 2)
        gs = decreasing_rearrangement(item.profile.gradient_profile(), P.ctx)
        a = lorentz_quasinorm(gs, 2, 4, tol=1e-10)
        b = lorentz_quasinorm(gs, 2, 4, tol=5e-11)
        if abs(a.value - b.value) > 10 * max(a.abs_error_estimate, b.abs_error_estimate):
            fails.append((item.ident, a.value - b.value))
    return _result("quadrature_consistency", fails, size)


def check_divergence_signals() -> CheckResult:
    fails = []
    P = LorentzParams(3, 2, 4)
    psi = make_psi(P)
    if not target_norm(psi, P).diverged:
        fails.append("psi target norm at q<inf")
    try:
        verify_embedding(psi, P)
        fails.append("verify_embedding(psi, q<inf) did not raise")
    except DivergenceError as exc:
        if exc.side != "lhs":
            fails.append(f"side {exc.side}")
    return _result("divergence_signals", fails, 2)


def check_profile_calculus(size: int = 40, seed: int = 0) -> CheckResult:
    """Power composition round trip, finite differences and sampled monotonicity."""
    rng = np.random.default_rng(seed)
    fails = []
    for item in corpus(3, 2, size, seed):
        u = item.profile
        s = float(rng.uniform(0.2, 5.0))
        back = u.compose_power(s).compose_power(1 / s)
        rs = np.sort(rng.uniform(0.01, 4.0, 64))
        if any(not math.isclose(back(r), u(r), rel_tol=1e-12, abs_tol=1e-300) for r in rs):
            fails.append((item.ident, "compose_power"))
        for r in rs[::8]:
            if r in u.breakpoints or any(abs(r - b) < 1e-5 * r for b in u.breakpoints):
                continue
            h = 1e-7 * r
            fd = abs(u(r + h) - u(r - h)) / (2 * h)
            exact = u.derivative_magnitude(r)
            if abs(fd - exact) > 1e-6 * max(exact, 1e-300) and abs(fd - exact) > 1e-9 * u(r) / r:
                fails.append((item.ident, "finite_difference", float(r)))
        vals = [u(r) for r in rs]
        if u.is_decreasing() and any(a < b for a, b in zip(vals, vals[1:])):
            fails.append((item.ident, "monotone"))
    return _result("profile_calculus", fails, size)


def check_continuous_discrete(size: int = 8, seed: int = 0, cells: int = 20000,
                              points: int = 200) -> CheckResult:
    """Relative L^1 distance between ``u*`` and the rearranged fine sampling.

    The L^1 integral uses a ``points``-node midpoint rule on ``(0, |supp u|)``.
    """
    fails, worst = [], 0.0
    rng = np.random.default_rng(seed)
    ctx = LorentzParams(3, 2).ctx
    for k in range(size):
        u = random_profile(rng, 3, 2.0, "compact")
        R = u.support_radius()
        if k % 2:
            # reflected on its support: increasing in r, so the rearrangement is nontrivial
            base = u
            u = RadialFunction(lambda r, base=base, R=R: base(R - r) if r < R else 0.0,
                               breakpoints=[R - b for b in base.breakpoints] + [R])
        total = ctx.ball_measure(R)
        exact = decreasing_rearrangement(u, ctx, method="generic")
        step = rearrange_sampled(sample_radial(u, ctx, total, cells)).as_step_function()
        ts = (np.arange(points) + 0.5) * total / points
        a = np.array([exact(t) for t in ts])
        b = np.array([step(t) for t in ts])
        rel = float(np.sum(np.abs(a - b)) / np.sum(a))
        worst = max(worst, rel)
        if rel > 1e-3:
            fails.append((f"compact-{k}", rel))
    return _result("continuous_discrete", fails, size, worst)


def check_scale_membership(size: int = 50, seed: int = 0) -> CheckResult:
    """Finite at ``q1`` implies finite at every ``q2 > q1``, weak norm included."""
    fails = []
    ctx = LorentzParams(3, 2).ctx
    qs = (2.0, 4.0, 8.0)
    for item in corpus(3, 2, size, seed):
        us = decreasing_rearrangement(item.profile, ctx)
        finite = [not lorentz_quasinorm(us, 6.0, q).diverged for q in qs]
        try:
            weak_norm(us, 6.0)
            finite.append(True)
        except DivergenceError:
            finite.append(False)
        if any(a and not b for a, b in zip(finite, finite[1:])):
            fails.append((item.ident, finite))
    return _result("lorentz_scale_membership", fails, size)


CHECKS: dict[str, Callable[..., object]] = {
    "sampled_axioms": check_sampled_axioms,
    "sharp_constant_forms": check_sharp_constant_forms,
    "psi_equality": check_psi_equality,
    "dual_path_oracle": check_dual_path,
    "epsilon_sweep": check_sweep,
    "embedding_corpus": check_embedding_corpus,
    "hardy_corpus": check_hardy_corpus,
    "transform_identities": check_transform_identities,
    "gamma_limit_v_eps": check_gamma_example,
    "scaling_invariance": check_scaling,
    "lorentz_lp_agreement": check_lp_agreement,
    "maximal_function": check_maximal,
    "profile_calculus": check_profile_calculus,
    "continuous_discrete": check_continuous_discrete,
    "lorentz_scale_membership": check_scale_membership,
    "quadrature_consistency": check_quadrature_consistency,
    "divergence_signals": check_divergence_signals,
}


def run_all() -> list[CheckResult]:
    out: list[CheckResult] = []
    for fn in CHECKS.values():
        res = fn()
        out.extend(res if isinstance(res, list) else [res])
    return out
