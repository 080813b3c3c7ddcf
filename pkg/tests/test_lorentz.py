import math

import numpy as np
import pytest

from hardylorentz import (
    DimensionContext,
    FunctionOneDim,
    LorentzParams,
    PowerAffineSegment,
    decreasing_rearrangement,
    equivalent_norm,
    hlp_majorization,
    lorentz_quasinorm,
    make_psi,
    maximal_function,
    weak_norm,
)
from hardylorentz.errors import DivergenceError, DomainError
from hardylorentz.lorentz import lorentz_integral, running_integral
from hardylorentz.profile import Hint
from hardylorentz.rearrange import PiecewiseOneDim

W3 = 4 * math.pi / 3


def step(height=1.0, width=1.0):
    return PiecewiseOneDim([PowerAffineSegment(0.0, 0.0, height, 0.0, width),
                            PowerAffineSegment(0.0, 0.0, 0.0, width, math.inf)])


def power(c, e):
    return PiecewiseOneDim([PowerAffineSegment(c, e, 0.0, 0.0, math.inf)])


def ramp():
    """max(1 - t, 0)."""
    return PiecewiseOneDim([PowerAffineSegment(-1.0, 1.0, 1.0, 0.0, 1.0),
                            PowerAffineSegment(0.0, 0.0, 0.0, 1.0, math.inf)])


class TestParams:
    def test_derived_fields(self):
        P = LorentzParams(3, 2, 4)
        assert P.p_star == 6
        assert P.omega == pytest.approx(W3, rel=1e-15)
        assert P.hardy_exponent == 0.5
        assert P.with_q(math.inf).q == math.inf

    @pytest.mark.parametrize("n, p, q", [(1, 0.5, 2), (3, 3, 2), (3, 0.5, 2), (3, 2, 0.5),
                                         (2.5, 1, 2)])
    def test_rejects(self, n, p, q):
        with pytest.raises(DomainError):
            LorentzParams(n, p, q)


class TestQuasinorm:
    def test_indicator(self):
        res = lorentz_quasinorm(step(), 2, 4)
        assert res.value == pytest.approx(0.5 ** 0.25, rel=1e-14)
        assert not res.diverged and res.abs_error_estimate >= 0

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
    def test_ramp_matches_lp(self, p):
        assert lorentz_quasinorm(ramp(), p, p).value == pytest.approx((1 / (p + 1)) ** (1 / p),
                                                                      rel=1e-13)

    @pytest.mark.parametrize("q", [1.0, 2.0, 6.0, 40.0])
    def test_psi_diverges(self, q):
        psi = decreasing_rearrangement(make_psi(LorentzParams(3, 2)), DimensionContext(3))
        assert lorentz_quasinorm(psi, 6, q).diverged

    def test_weak_rejected(self):
        with pytest.raises(DomainError):
            lorentz_quasinorm(step(), 2, math.inf)

    def test_quadrature_route_agrees(self):
        a = lorentz_integral(ramp(), 2.5, 3.0)[0]
        b = lorentz_integral(ramp(), 2.5, 3.0, closed_form=False)[0]
        assert a == pytest.approx(b, rel=1e-10)

    def test_callable_input(self):
        f = FunctionOneDim(lambda t: math.exp(-t), head=Hint(1.0, 0.0))
        # int_0^inf e^{-qt} t^{q/p-1} dt = Gamma(q/p) q^{-q/p}
        p, q = 2.0, 3.0
        expect = (math.gamma(q / p) * q ** (-q / p)) ** (1 / q)
        assert lorentz_quasinorm(f, p, q).value == pytest.approx(expect, rel=1e-9)

    def test_non_monotone_rejected(self):
        with pytest.raises(DomainError):
            PiecewiseOneDim([PowerAffineSegment(1.0, 1.0, 0.0, 0.0, 1.0),
                             PowerAffineSegment(0.0, 0.0, 0.0, 1.0, math.inf)])


class TestWeakNorm:
    def test_examples(self):
        assert weak_norm(power(1.0, -0.5), 2) == pytest.approx(1.0, rel=1e-15)
        psi = decreasing_rearrangement(make_psi(LorentzParams(3, 2)), DimensionContext(3))
        assert weak_norm(psi, 6) == pytest.approx(W3 ** (1 / 6), rel=1e-14)
        assert weak_norm(step(), 2) == pytest.approx(1.0, rel=1e-15)

    def test_growth_diverges(self):
        with pytest.raises(DivergenceError):
            weak_norm(power(1.0, -0.25), 2)

    def test_generic_route(self):
        f = FunctionOneDim(lambda t: min(1.0, t ** -0.5), breakpoints=[1.0],
                           head=Hint(1.0, 0.0), tail=Hint(1.0, -0.5))
        assert weak_norm(f, 3) == pytest.approx(1.0, rel=1e-9)


class TestMaximal:
    def test_indicator(self):
        fss = maximal_function(step())
        assert fss(0.5) == pytest.approx(1.0)
        assert fss(1.0) == pytest.approx(1.0)
        assert fss(4.0) == pytest.approx(0.25)

    def test_power(self):
        fss = maximal_function(power(1.0, -0.5))
        for t in (0.01, 1.0, 30.0):
            assert fss(t) == pytest.approx(2 * t ** -0.5, rel=1e-12)

    def test_non_integrable(self):
        with pytest.raises(DivergenceError):
            maximal_function(power(1.0, -1.5))(1.0)

    def test_dominates(self):
        f = ramp()
        fss = maximal_function(f)
        for t in np.random.default_rng(0).uniform(0.01, 3, 64):
            assert fss(t) >= f(t)

    def test_running_integral(self):
        assert running_integral(ramp(), 0.5) == pytest.approx(0.375, rel=1e-14)
        assert running_integral(ramp(), 7.0) == pytest.approx(0.5, rel=1e-14)


class TestEquivalentNorm:
    def test_indicator(self):
        assert equivalent_norm(step(), 2, 2, 1.0).value == pytest.approx(1.0, rel=1e-12)

    def test_power(self):
        res = equivalent_norm(power(1.0, -0.25), 2, 2, 1.0)
        assert res.value == pytest.approx(4 / 3 * math.sqrt(2), rel=1e-12)

    def test_dominates_plain_norm(self):
        f = ramp()
        for D in (0.3, 1.0, 5.0):
            assert equivalent_norm(f, 2, 3, D).value >= lorentz_quasinorm(f, 2, 3, upper=D).value

    def test_p_one_rejected(self):
        with pytest.raises(DomainError):
            equivalent_norm(step(), 1, 2, 1.0)


class TestMajorization:
    def test_examples(self):
        assert hlp_majorization(step(), step(2.0, 0.5), 1.0)
        assert hlp_majorization(ramp(), ramp(), 1.0)
        assert not hlp_majorization(step(2.0), step(), 1.0)

    def test_reverse_fails(self):
        assert not hlp_majorization(step(2.0, 0.5), step(), 1.0)
