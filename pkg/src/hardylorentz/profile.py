"""Radial profiles on (0, inf) built from power-affine segments.

A segment holds ``c * r**alpha + d`` on ``[lo, hi)``. Exponent arithmetic
(composition with ``r**s``, dilation, differentiation) is done on the
``(c, alpha, d)`` triples, never by resampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from ._quad import power_affine_moment
from .errors import BreakpointError, DomainError, ProfileFormatError

_REL = 1e-12


class Hint(NamedTuple):
    """Leading power behaviour ``coef * x**expo`` at an endpoint.

    ``coef == 0`` means there is no power-law leading term: the function
    vanishes there or decays faster than any power.
    """

    coef: float
    expo: float


ZERO_HINT = Hint(0.0, 0.0)


@dataclass(frozen=True)
class PowerAffineSegment:
    c: float
    alpha: float
    d: float
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo >= 0 and self.hi > self.lo):
            raise DomainError(f"bad segment bounds [{self.lo}, {self.hi})")
        if math.isinf(self.hi) and not (
            self.is_constant or (self.alpha < 0 and self.d == 0)
        ):
            raise DomainError("an unbounded segment must decay (alpha < 0, d = 0) or be constant")
        for v in (self.left_limit(), self.right_limit()):
            if v < -1e-12 * max(1.0, abs(self.c), abs(self.d)):
                raise DomainError(f"segment takes negative values ({v})")

    @property
    def is_constant(self) -> bool:
        return self.c == 0 or self.alpha == 0

    @property
    def is_pure_power(self) -> bool:
        return self.d == 0 and not self.is_constant

    def value(self, r: float) -> float:
        if self.is_constant:
            return self.d + (self.c if self.alpha == 0 else 0.0)
        return self.c * r ** self.alpha + self.d

    def slope(self, r: float) -> float:
        if self.is_constant:
            return 0.0
        return self.c * self.alpha * r ** (self.alpha - 1)

    def left_limit(self) -> float:
        """Value as r -> lo+ (``inf`` for a singular core at 0)."""
        if self.is_constant:
            return self.value(1.0)
        if self.lo == 0:
            if self.alpha > 0:
                return self.d
            return math.copysign(math.inf, self.c)
        return self.value(self.lo)

    def right_limit(self) -> float:
        """Value as r -> hi-."""
        if self.is_constant:
            return self.value(1.0)
        if math.isinf(self.hi):
            if self.alpha < 0:
                return self.d
            return math.copysign(math.inf, self.c)
        return self.value(self.hi)

    def is_nonincreasing(self) -> bool:
        return self.is_constant or self.c * self.alpha <= 0

    def gradient(self) -> "PowerAffineSegment":
        """Segment carrying ``|d/dr (c r^alpha + d)| = |c alpha| r^(alpha-1)``."""
        if self.is_constant:
            return PowerAffineSegment(0.0, 0.0, 0.0, self.lo, self.hi)
        k = abs(self.c * self.alpha)
        if self.alpha == 1:
            return PowerAffineSegment(0.0, 0.0, k, self.lo, self.hi)
        return PowerAffineSegment(k, self.alpha - 1, 0.0, self.lo, self.hi)

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "alpha": self.alpha,
            "d": self.d,
            "lo": self.lo,
            "hi": "inf" if math.isinf(self.hi) else self.hi,
        }


class RadialFunction:
    """A nonnegative radial map ``r -> f(r)`` with quadrature hints.

    Parameters
    ----------
    func : callable
        Evaluation for ``r > 0``.
    breakpoints : sequence of float
        Radii where smoothness may fail; quadrature panels split there.
    head, tail : Hint
        Leading power behaviour as ``r -> 0+`` and ``r -> inf``.
    deriv : callable, optional
        ``r -> f'(r)`` (signed).
    decreasing : bool
        Whether ``f`` is known to be non-increasing.
    deriv_head : Hint, optional
        Leading behaviour of ``|f'|`` at 0 when it is not implied by
        ``head``.
    """

    def __init__(
        self,
        func: Callable[[float], float],
        breakpoints: Sequence[float] = (),
        head: Hint = ZERO_HINT,
        tail: Hint = ZERO_HINT,
        deriv: Callable[[float], float] | None = None,
        decreasing: bool = False,
        deriv_head: Hint | None = None,
    ):
        self._func = func
        self.breakpoints = tuple(sorted(b for b in breakpoints if 0 < b < math.inf))
        self.head = Hint(*head)
        self.tail = Hint(*tail)
        self._deriv = deriv
        self.decreasing = decreasing
        self.deriv_head = deriv_head

    @property
    def sup_radius(self) -> float:
        return math.inf

    def __call__(self, r: float) -> float:
        if not r > 0:
            raise DomainError(f"radius must be positive, got {r}")
        return self._func(r)

    def derivative(self, r: float) -> float:
        if self._deriv is None:
            raise DomainError("no derivative available for this function")
        return self._deriv(r)

    def derivative_magnitude(self, r: float) -> float:
        return abs(self.derivative(r))

    def gradient_head(self) -> Hint:
        """Leading behaviour of ``|f'|`` as r -> 0+."""
        if self.deriv_head is not None:
            return self.deriv_head
        c, e = self.head
        return Hint(abs(c * e), e - 1)


class RadialProfile(RadialFunction):
    """Contiguous power-affine segments covering ``(0, sup hi)``.

    Evaluation is right-continuous at breakpoints. Immutable.
    """

    def __init__(self, segments: Sequence[PowerAffineSegment]):
        segs = tuple(segments)
        if not segs:
            raise ProfileFormatError("profile needs at least one segment")
        if segs[0].lo != 0:
            raise ProfileFormatError("first segment must start at 0", index=0)
        for i in range(1, len(segs)):
            prev, cur = segs[i - 1], segs[i]
            if not math.isclose(prev.hi, cur.lo, rel_tol=_REL, abs_tol=0.0):
                kind = "overlapping" if cur.lo < prev.hi else "non-contiguous"
                raise ProfileFormatError(f"{kind} segment at index {i}", index=i)
        self.segments = segs
        first, last = segs[0], segs[-1]
        if first.alpha < 0 and not first.is_constant:
            head = Hint(first.c, first.alpha)
        else:
            head = Hint(first.left_limit(), 0.0)
        if not math.isinf(last.hi):
            tail = ZERO_HINT
        elif last.is_constant:
            tail = Hint(last.value(1.0), 0.0)
        else:
            tail = Hint(last.c, last.alpha)
        super().__init__(
            self._eval,
            breakpoints=[s.lo for s in segs[1:]],
            head=head,
            tail=tail,
            deriv=self._slope,
            decreasing=self.is_decreasing(),
        )

    # -- evaluation -------------------------------------------------------
    @property
    def sup_radius(self) -> float:
        return self.segments[-1].hi

    def segment_index(self, r: float) -> int:
        lo, hi = 0, len(self.segments)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.segments[mid].lo <= r:
                lo = mid
            else:
                hi = mid
        return lo

    def _eval(self, r):
        if r >= self.sup_radius:
            raise DomainError(f"radius {r} outside (0, {self.sup_radius})")
        return max(self.segments[self.segment_index(r)].value(r), 0.0)

    def _slope(self, r):
        return self.segments[self.segment_index(r)].slope(r)

    def derivative_magnitude(self, r: float) -> float:
        if not r > 0 or r >= self.sup_radius:
            raise DomainError(f"radius {r} outside (0, {self.sup_radius})")
        for b in self.breakpoints:
            if math.isclose(r, b, rel_tol=_REL):
                raise BreakpointError(f"radius {r} is a breakpoint")
        return abs(self._slope(r))

    # -- structure --------------------------------------------------------
    def is_decreasing(self) -> bool:
        """Every segment non-increasing and no upward jump at a breakpoint."""
        for i, seg in enumerate(self.segments):
            if not seg.is_nonincreasing():
                return False
            if i + 1 < len(self.segments):
                left = seg.right_limit()
                right = self.segments[i + 1].left_limit()
                if right > left + _REL * max(1.0, abs(left)):
                    return False
        return True

    def gradient_profile(self) -> "RadialProfile":
        """``|u'|`` as a profile (pure power on each segment)."""
        return RadialProfile([s.gradient() for s in self.segments])

    def compose_power(self, s: float) -> "RadialProfile":
        """The profile ``r -> f(r**s)``."""
        if not s > 0:
            raise DomainError("composition exponent must be positive")
        inv = 1.0 / s
        return RadialProfile(
            [
                PowerAffineSegment(
                    seg.c, seg.alpha * s, seg.d, seg.lo ** inv, seg.hi ** inv
                )
                for seg in self.segments
            ]
        )

    def dilate(self, lam: float) -> "RadialProfile":
        """The profile ``r -> f(lam * r)``."""
        if not lam > 0:
            raise DomainError("dilation factor must be positive")
        out = []
        for seg in self.segments:
            c = seg.c if seg.is_constant else seg.c * lam ** seg.alpha
            out.append(PowerAffineSegment(c, seg.alpha, seg.d, seg.lo / lam, seg.hi / lam))
        return RadialProfile(out)

    def scale(self, k: float) -> "RadialProfile":
        """The profile ``r -> k * f(r)`` for ``k >= 0``."""
        return RadialProfile(
            [PowerAffineSegment(k * s.c, s.alpha, k * s.d, s.lo, s.hi) for s in self.segments]
        )

    def support_radius(self) -> float:
        """Radius beyond which the profile vanishes identically."""
        r = 0.0
        for seg in self.segments:
            if not (seg.is_constant and seg.value(1.0) == 0):
                r = seg.hi
        return r

    def radial_moment(self, m: float, k: float, closed_form=True, tol=1e-11):
        """``int_0^inf f(r)**m r**(k-1) dr`` as ``(value, abs_error)``."""
        total, err = 0.0, 0.0
        for seg in self.segments:
            v, e = power_affine_moment(
                seg.c, seg.alpha, seg.d, seg.lo, seg.hi, m, k, closed_form, tol
            )
            total += v
            err += e
        return total, err

    # -- serialisation ------------------------------------------------------
    def to_dict(self) -> dict:
        return {"segments": [s.to_dict() for s in self.segments]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "RadialProfile":
        try:
            raw = data["segments"]
        except (KeyError, TypeError):
            raise ProfileFormatError("missing 'segments' list") from None
        if not isinstance(raw, list):
            raise ProfileFormatError("'segments' must be a list")
        segs = []
        for i, item in enumerate(raw):
            try:
                hi = item["hi"]
                hi = math.inf if hi in ("inf", "Infinity", "+inf") else float(hi)
                seg = PowerAffineSegment(
                    float(item.get("c", 0.0)),
                    float(item.get("alpha", 0.0)),
                    float(item.get("d", 0.0)),
                    float(item["lo"]),
                    hi,
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ProfileFormatError(f"segment {i}: {exc}", index=i) from None
            segs.append(seg)
        return cls(segs)

    @classmethod
    def from_json(cls, text: str) -> "RadialProfile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProfileFormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def __repr__(self):
        parts = ", ".join(
            f"{s.c:g}*r^{s.alpha:g}+{s.d:g} on [{s.lo:g},{s.hi:g})" for s in self.segments
        )
        return f"RadialProfile({parts})"


def evaluate(f: RadialFunction, r: float) -> float:
    return f(r)


def derivative_magnitude(f: RadialProfile, r: float) -> float:
    return f.derivative_magnitude(r)


def compose_power(f: RadialProfile, s: float) -> RadialProfile:
    return f.compose_power(s)


def is_decreasing(f: RadialProfile) -> bool:
    return f.is_decreasing()


def single_power(c: float, alpha: float) -> RadialProfile:
    """``c * r**alpha`` on the whole half-line (``alpha < 0``)."""
    return RadialProfile([PowerAffineSegment(c, alpha, 0.0, 0.0, math.inf)])


def ball_indicator(radius: float = 1.0) -> RadialProfile:
    return RadialProfile(
        [
            PowerAffineSegment(0.0, 0.0, 1.0, 0.0, radius),
            PowerAffineSegment(0.0, 0.0, 0.0, radius, math.inf),
        ]
    )


def cap(radius: float = 1.0) -> RadialProfile:
    """The tent ``(1 - r/radius)_+``."""
    return RadialProfile(
        [
            PowerAffineSegment(-1.0 / radius, 1.0, 1.0, 0.0, radius),
            PowerAffineSegment(0.0, 0.0, 0.0, radius, math.inf),
        ]
    )
