import math

import numpy as np
import pytest

from hardylorentz import (
    DimensionContext,
    LorentzParams,
    PowerAffineSegment,
    RadialProfile,
    SampledFunction,
    decreasing_rearrangement,
    distribution_function,
    make_psi,
    make_v_eps,
    rearrange_sampled,
    symmetric_rearrangement,
)
from hardylorentz.errors import DivergenceError, DomainError
from hardylorentz.profile import RadialFunction, ball_indicator, cap, single_power
from hardylorentz.rearrange import LevelSetOneDim, PiecewiseOneDim, sample_radial

C3 = DimensionContext(3)
W3 = 4 * math.pi / 3


def bump():
    """Zero on (0,1), rises linearly to 1 at r=2, falls back to 0 at r=3."""
    return RadialProfile([
        PowerAffineSegment(0.0, 0.0, 0.0, 0.0, 1.0),
        PowerAffineSegment(1.0, 1.0, -1.0, 1.0, 2.0),
        PowerAffineSegment(-1.0, 1.0, 3.0, 2.0, 3.0),
        PowerAffineSegment(0.0, 0.0, 0.0, 3.0, math.inf),
    ])


def test_ball_volume():
    assert DimensionContext(2).omega == pytest.approx(math.pi, rel=1e-15)
    assert C3.omega == pytest.approx(W3, rel=1e-15)
    assert C3.sphere_area == pytest.approx(4 * math.pi, rel=1e-15)
    for n in range(2, 11):
        ctx = DimensionContext(n)
        assert ctx.omega == pytest.approx(math.pi ** (n / 2) / math.gamma(1 + n / 2), rel=1e-14)


def test_distribution_examples():
    assert distribution_function(ball_indicator(1.0), C3, 0.5) == pytest.approx(W3)
    psi = make_psi(LorentzParams(3, 2))
    for t in (0.3, 1.0, 2.5):
        assert distribution_function(psi, C3, t) == pytest.approx(W3 * t ** -6, rel=1e-12)
    assert distribution_function(cap(1.0), C3, 1.5) == 0.0


def test_distribution_errors():
    with pytest.raises(DomainError):
        distribution_function(cap(1.0), C3, -0.1)
    flat = RadialProfile([PowerAffineSegment(0.0, 0.0, 1.0, 0.0, math.inf)])
    with pytest.raises(DivergenceError):
        distribution_function(flat, C3, 0.5)


def test_indicator_rearrangement():
    us = decreasing_rearrangement(ball_indicator(1.0), C3)
    assert us(W3 * 0.999) == 1.0
    assert us(W3) == 0.0
    assert us(W3 * 1.5) == 0.0


@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0])
def test_power_rearrangement(beta):
    us = decreasing_rearrangement(single_power(1.0, -beta), C3)
    for t in (1e-3, 0.7, 40.0):
        assert us(t) == pytest.approx((t / W3) ** (-beta / 3), rel=1e-13)


def test_psi_rearrangement():
    us = decreasing_rearrangement(make_psi(LorentzParams(3, 2)), C3)
    for t in (0.01, 1.0, 100.0):
        assert us(t) == pytest.approx(W3 ** (1 / 6) * t ** (-1 / 6), rel=1e-13)


def test_symmetric_rearrangement_fixed_point():
    u = make_v_eps(0.1, LorentzParams(3, 2))
    us = symmetric_rearrangement(u, C3)
    for r in np.random.default_rng(3).uniform(0.01, 3.0, 64):
        assert us(r) == pytest.approx(u(r), rel=1e-12)


def test_symmetric_rearrangement_of_bump():
    u = bump()
    us = symmetric_rearrangement(u, C3)
    rs = np.linspace(0.01, 3.0, 60)
    vals = [us(r) for r in rs]
    assert all(a >= b - 1e-15 for a, b in zip(vals, vals[1:]))
    for level in np.linspace(0.02, 0.98, 20):
        assert distribution_function(us, C3, level) == pytest.approx(
            distribution_function(u, C3, level), rel=1e-9)


def test_bump_routes_through_level_sets():
    assert isinstance(decreasing_rearrangement(bump(), C3), LevelSetOneDim)
    assert isinstance(decreasing_rearrangement(cap(1.0), C3), PiecewiseOneDim)


def test_generic_method_matches_exact():
    u = make_v_eps(0.2, LorentzParams(3, 2))
    exact = decreasing_rearrangement(u, C3)
    generic = decreasing_rearrangement(u, C3, method="generic")
    for t in (0.01, 0.5, 2.0, 4.0):
        assert generic(t) == pytest.approx(exact(t), rel=1e-10)


def test_zero_function():
    zero = RadialProfile([PowerAffineSegment(0.0, 0.0, 0.0, 0.0, math.inf)])
    us = symmetric_rearrangement(zero, C3)
    assert us(0.5) == 0.0
    assert decreasing_rearrangement(zero, C3)(1.0) == 0.0


def test_non_profile_function():
    f = RadialFunction(lambda r: math.exp(-r), (), head=(1.0, 0.0))
    us = decreasing_rearrangement(f, C3)
    t = C3.ball_measure(0.7)
    assert us(t) == pytest.approx(math.exp(-0.7), rel=1e-9)


def test_rearrange_sampled_examples():
    assert rearrange_sampled(SampledFunction((0, 3, 1, 2))).values == (3.0, 2.0, 1.0, 0.0)
    s = SampledFunction((5.0, 4.0, 4.0, 0.5), 0.25)
    assert rearrange_sampled(s) == s
    x = SampledFunction(tuple(np.random.default_rng(4).exponential(size=33)), 0.3)
    assert math.fsum(rearrange_sampled(x).values) == pytest.approx(math.fsum(x.values), rel=1e-15)


def test_sampled_validation():
    with pytest.raises(DomainError):
        SampledFunction((1.0, -1.0))
    with pytest.raises(DomainError):
        SampledFunction((1.0,), 0.0)


def test_sampled_csv_roundtrip():
    s = SampledFunction((0.1, 3.25, 1e-17, 2.0), 0.125)
    assert SampledFunction.from_csv(s.to_csv()) == s
    with pytest.raises(DomainError):
        SampledFunction.from_csv("x\n1\n")


def test_sampled_step_function_agrees():
    s = SampledFunction((1.0, 3.0, 2.0), 0.5)
    step = s.as_step_function()
    assert [step(t) for t in (0.25, 0.75, 1.25, 2.0)] == [3.0, 2.0, 1.0, 0.0]
    assert s.distribution(1.5) == 1.0


def test_continuous_and_discrete_rearrangements_agree():
    u = bump()
    total = C3.ball_measure(3.0)
    samples = sample_radial(u, C3, total, 4000)
    step = rearrange_sampled(samples).as_step_function()
    exact = decreasing_rearrangement(u, C3)
    for t in np.linspace(0.05, 0.95, 10) * total:
        # a sample error of one cell times the largest slope bounds the gap
        assert abs(step(t) - exact(t)) < 5e-3
