"""Distribution functions and decreasing / symmetric rearrangements.

Three representations of a rearranged function ``u*`` on the measure
axis ``t in (0, inf)`` are produced, depending on the input:

* :class:`PiecewiseOneDim` -- exact power-affine pieces in ``t``, for a
  radially non-increasing :class:`RadialProfile` (``u*(t) = u((t/w)^(1/n))``).
* :class:`ComposedOneDim` -- the same substitution applied lazily to a
  general non-increasing :class:`RadialFunction`.
* :class:`LevelSetOneDim` -- anything else; ``u*`` is evaluated by a
  search over levels of the distribution function ``mu``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DivergenceError, DomainError
from .profile import (
    ZERO_HINT,
    Hint,
    PowerAffineSegment,
    RadialFunction,
    RadialProfile,
)

LEVEL_ITERATIONS = 80


@dataclass(frozen=True)
class DimensionContext:
    """Ambient dimension and the unit-ball volume ``omega_n``."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.n}")

    @property
    def omega(self) -> float:
        return math.pi ** (self.n / 2) / math.gamma(1 + self.n / 2)

    @property
    def sphere_area(self) -> float:
        return self.n * self.omega

    def ball_measure(self, r: float) -> float:
        return self.omega * r ** self.n

    def radius_of_measure(self, t: float) -> float:
        return (t / self.omega) ** (1.0 / self.n)


def unit_ball_volume(n: int) -> float:
    return DimensionContext(n).omega


def _map_hint(h: Hint, ctx: DimensionContext) -> Hint:
    """Radial hint ``C r^a`` -> measure-axis hint ``C (t/w)^(a/n)``."""
    c, a = h
    if c == 0 or a == 0:
        return Hint(c, 0.0)
    return Hint(c * ctx.omega ** (-a / ctx.n), a / ctx.n)


# ---------------------------------------------------------------------------
# one-dimensional carriers
# ---------------------------------------------------------------------------


class OneDimFunction:
    """Non-increasing, right-continuous, nonnegative map on ``t > 0``.

    Subclasses provide ``__call__``, ``breakpoints`` and the endpoint hints
    ``head`` (t -> 0+) and ``tail`` (t -> inf).
    """

    breakpoints: tuple = ()
    head: Hint = ZERO_HINT
    tail: Hint = ZERO_HINT

    def __call__(self, t: float) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def sup_value(self) -> float:
        c, e = self.head
        if e < 0 and c > 0:
            return math.inf
        return c


class FunctionOneDim(OneDimFunction):
    def __init__(self, func, breakpoints=(), head=ZERO_HINT, tail=ZERO_HINT):
        self._func = func
        self.breakpoints = tuple(sorted(b for b in breakpoints if 0 < b < math.inf))
        self.head = Hint(*head)
        self.tail = Hint(*tail)

    def __call__(self, t):
        if not t > 0:
            raise DomainError(f"measure variable must be positive, got {t}")
        return self._func(t)


class PiecewiseOneDim(OneDimFunction):
    """Power-affine pieces in ``t``; stored as a :class:`RadialProfile` on the t axis."""

    def __init__(self, pieces: RadialProfile | Sequence[PowerAffineSegment]):
        if not isinstance(pieces, RadialProfile):
            pieces = RadialProfile(pieces)
        if not pieces.is_decreasing():
            raise DomainError("a rearrangement must be non-increasing")
        self.pieces = pieces
        self.breakpoints = pieces.breakpoints
        self.head = pieces.head
        self.tail = pieces.tail

    @property
    def segments(self):
        return self.pieces.segments

    def __call__(self, t):
        if not t > 0:
            raise DomainError(f"measure variable must be positive, got {t}")
        if t >= self.pieces.sup_radius:
            return 0.0
        return self.pieces(t)

    def to_radial(self, ctx: DimensionContext) -> RadialProfile:
        """``r -> u*(w r^n)`` as an exact profile."""
        w, n = ctx.omega, ctx.n
        segs = []
        for s in self.segments:
            c = s.c if s.is_constant else s.c * w ** s.alpha
            a = s.alpha if s.is_constant else s.alpha * n
            segs.append(
                PowerAffineSegment(c, a, s.d, ctx.radius_of_measure(s.lo), ctx.radius_of_measure(s.hi))
            )
        return RadialProfile(segs)


class ComposedOneDim(OneDimFunction):
    """``t -> f((t/w)^(1/n))`` for a non-increasing radial ``f``."""

    def __init__(self, f: RadialFunction, ctx: DimensionContext):
        self.source = f
        self.ctx = ctx
        self.breakpoints = tuple(ctx.ball_measure(b) for b in f.breakpoints)
        self.head = _map_hint(f.head, ctx)
        self.tail = _map_hint(f.tail, ctx)

    def __call__(self, t):
        if not t > 0:
            raise DomainError(f"measure variable must be positive, got {t}")
        return self.source(self.ctx.radius_of_measure(t))


# ---------------------------------------------------------------------------
# superlevel sets
# ---------------------------------------------------------------------------


def _segment_superlevel(seg: PowerAffineSegment, s: float):
    """Radius interval of ``{r in [lo, hi): seg(r) > s}`` or ``None``."""
    if seg.is_constant:
        return (seg.lo, seg.hi) if seg.value(1.0) > s else None
    c, al, d = seg.c, seg.alpha, seg.d
    x = (s - d) / c
    if c > 0:  # c r^al > s - d  <=>  r^al > x
        if x <= 0:
            return seg.lo, seg.hi
        root = _root(x, al)
        a, b = (root, math.inf) if al > 0 else (0.0, root)
    else:  # r^al < x
        if x <= 0:
            return None
        root = _root(x, al)
        a, b = (0.0, root) if al > 0 else (root, math.inf)
    a, b = max(a, seg.lo), min(b, seg.hi)
    return (a, b) if b > a else None


def _root(x, al):
    try:
        return x ** (1.0 / al)
    except OverflowError:
        return math.inf


def _end_values(f: RadialFunction, a: float, b: float):
    if a == 0:
        c, e = f.head
        fa = math.inf if (e < 0 and c > 0) else c
    else:
        fa = f(a)
    if math.isinf(b):
        c, e = f.tail
        fb = math.inf if (e > 0 and c > 0) else (0.0 if e < 0 else c)
    else:
        fb = f(b * (1 - 1e-15))
    return fa, fb


def _crossing(f, a, b, s, decreasing):
    """Radius in (a, b) where a monotone ``f`` crosses level ``s``."""
    above = (lambda r: f(r) > s) if decreasing else (lambda r: f(r) <= s)
    lo = a if a > 0 else None
    hi = b if not math.isinf(b) else None
    if lo is None:
        lo = (hi if hi is not None else 1.0) / 2
        for _ in range(4000):
            if above(lo):
                break
            lo /= 2
    if hi is None:
        hi = lo * 2
        for _ in range(4000):
            if not above(hi):
                break
            hi *= 2
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if above(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * (hi - (a if a > 0 else 0.0)) or hi / lo - 1 < 4e-16:
            break
    return 0.5 * (lo + hi)


def _general_superlevel(f: RadialFunction, a: float, b: float, s: float):
    """Superlevel interval inside a monotone piece of a general function."""
    fa, fb = _end_values(f, a, b)
    if fa > s and fb > s:
        return a, b
    if fa <= s and fb <= s:
        return None
    if fa > s:
        return a, _crossing(f, a, b, s, decreasing=True)
    return _crossing(f, a, b, s, decreasing=False), b


def _pieces(f: RadialFunction):
    edges = (0.0,) + f.breakpoints + (math.inf,)
    return list(zip(edges[:-1], edges[1:]))


def superlevel_intervals(u: RadialFunction, level: float):
    """Radius intervals where ``u > level``, one per monotone piece."""
    out = []
    if isinstance(u, RadialProfile):
        for seg in u.segments:
            iv = _segment_superlevel(seg, level)
            if iv is not None:
                out.append(iv)
    else:
        for a, b in _pieces(u):
            iv = _general_superlevel(u, a, b, level)
            if iv is not None:
                out.append(iv)
    return out


def _measure(u: RadialFunction, ctx: DimensionContext, level: float) -> float:
    total = 0.0
    for a, b in superlevel_intervals(u, level):
        if math.isinf(b):
            return math.inf
        total += ctx.omega * (b ** ctx.n - a ** ctx.n)
    return total


def distribution_function(u: RadialFunction, ctx: DimensionContext, level: float) -> float:
    """Lebesgue measure of ``{x in R^n : u(|x|) > level}``."""
    if level < 0:
        raise DomainError("level must be nonnegative")
    m = _measure(u, ctx, level)
    if math.isinf(m):
        raise DivergenceError(f"superlevel set at {level} has infinite measure", side="infinity")
    return m


def _level_breakpoints(u: RadialFunction):
    vals = set()
    if isinstance(u, RadialProfile):
        for seg in u.segments:
            vals.add(seg.left_limit())
            vals.add(seg.right_limit())
    else:
        for a, b in _pieces(u):
            vals.update(_end_values(u, a, b))
    return sorted(v for v in vals if 0 < v < math.inf)


class LevelSetOneDim(OneDimFunction):
    """``u*`` of an arbitrary radial function, evaluated through ``mu``.

    ``u*(t) = sup{s : mu(s) > t}`` is found by bracketing between level
    breakpoints followed by ``LEVEL_ITERATIONS`` geometric bisections.
    """

    def __init__(self, source: RadialFunction, ctx: DimensionContext):
        self.source = source
        self.ctx = ctx
        self.levels = tuple(_level_breakpoints(source))
        c, e = source.head
        self.unbounded = e < 0 and c > 0
        self.support_measure = _measure(source, ctx, 0.0)
        self._mu_levels = tuple(self.mu(v) for v in self.levels)
        edges = {m for m in self._mu_levels if 0 < m < math.inf}
        if 0 < self.support_measure < math.inf:
            edges.add(self.support_measure)
        self.breakpoints = tuple(sorted(edges))
        self.head = _map_hint(source.head, ctx) if self.unbounded else Hint(
            self.levels[-1] if self.levels else 0.0, 0.0
        )
        if math.isfinite(self.support_measure):
            self.tail = ZERO_HINT
        else:
            self.tail = _map_hint(source.tail, ctx)

    def mu(self, s: float) -> float:
        """Distribution function; ``inf`` when the superlevel set is unbounded."""
        return _measure(self.source, self.ctx, s)

    def __call__(self, t):
        if not t > 0:
            raise DomainError(f"measure variable must be positive, got {t}")
        if t >= self.support_measure:
            return 0.0
        j = sum(1 for m in self._mu_levels if m > t)
        s_lo = self.levels[j - 1] if j > 0 else 0.0
        if j < len(self.levels):
            s_hi = self.levels[j]
        else:
            s_hi = max(self.levels[-1] if self.levels else 1.0, 1.0) * 2
            while self.mu(s_hi) > t:
                s_hi *= 2
        if s_lo == 0.0:
            s_lo = s_hi / 2
            while not self.mu(s_lo) > t:
                s_lo /= 2
                if s_lo < 1e-300:
                    return 0.0
        for _ in range(LEVEL_ITERATIONS):
            mid = math.sqrt(s_lo * s_hi)
            if self.mu(mid) > t:
                s_lo = mid
            else:
                s_hi = mid
        return 0.5 * (s_lo + s_hi)


def decreasing_rearrangement(
    u: RadialFunction, ctx: DimensionContext, method: str = "auto"
) -> OneDimFunction:
    """The decreasing rearrangement ``u*`` of a nonnegative radial function.

    ``method="auto"`` takes the exact fast path for non-increasing inputs;
    ``method="generic"`` forces the level-set construction.
    """
    if method not in ("auto", "generic"):
        raise DomainError(f"unknown method {method!r}")
    if method == "auto":
        if isinstance(u, RadialProfile) and u.is_decreasing():
            w, n = ctx.omega, ctx.n
            segs = []
            for s in u.segments:
                if s.is_constant:
                    c, a = s.c, s.alpha
                else:
                    c, a = s.c * w ** (-s.alpha / n), s.alpha / n
                segs.append(
                    PowerAffineSegment(c, a, s.d, ctx.ball_measure(s.lo), ctx.ball_measure(s.hi))
                )
            return PiecewiseOneDim(segs)
        if u.decreasing:
            return ComposedOneDim(u, ctx)
    return LevelSetOneDim(u, ctx)


def symmetric_rearrangement(
    u: RadialFunction, ctx: DimensionContext, method: str = "auto"
) -> RadialFunction:
    """``u#(r) = u*(w r^n)``."""
    ustar = decreasing_rearrangement(u, ctx, method)
    if isinstance(ustar, PiecewiseOneDim):
        return ustar.to_radial(ctx)
    w, n = ctx.omega, ctx.n

    def back(h: Hint) -> Hint:
        c, b = h
        return Hint(c * w ** b, n * b) if b else Hint(c, 0.0)

    return RadialFunction(
        lambda r: ustar(ctx.ball_measure(r)),
        breakpoints=[ctx.radius_of_measure(t) for t in ustar.breakpoints],
        head=back(ustar.head),
        tail=back(ustar.tail),
        decreasing=True,
    )


# ---------------------------------------------------------------------------
# sampled data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampledFunction:
    """Finitely many cell values of equal measure ``cell_measure``."""

    values: tuple
    cell_measure: float = 1.0

    def __post_init__(self):
        vals = tuple(float(v) for v in np.asarray(self.values, dtype=float).ravel())
        if any(v < 0 or v != v for v in vals):
            raise DomainError("sampled values must be nonnegative")
        if not self.cell_measure > 0:
            raise DomainError("cell measure must be positive")
        object.__setattr__(self, "values", vals)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values)

    @property
    def total_measure(self) -> float:
        return len(self.values) * self.cell_measure

    def distribution(self, level: float) -> float:
        return float(np.count_nonzero(self.array > level)) * self.cell_measure

    def as_step_function(self) -> PiecewiseOneDim:
        """The rearrangement as a step function on ``(0, total_measure)``."""
        h = self.cell_measure
        vals = np.sort(self.array)[::-1]
        segs = [PowerAffineSegment(0.0, 0.0, float(v), k * h, (k + 1) * h) for k, v in enumerate(vals)]
        segs.append(PowerAffineSegment(0.0, 0.0, 0.0, len(vals) * h, math.inf))
        return PiecewiseOneDim(segs)

    def lipschitz_constant(self) -> float:
        """Largest adjacent difference over the cell size."""
        if len(self.values) < 2:
            return 0.0
        return float(np.max(np.abs(np.diff(self.array)))) / self.cell_measure

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# cell_measure={self.cell_measure!r}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value"])
        for v in self.values:
            w.writerow([repr(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampledFunction":
        lines = text.splitlines()
        cell = 1.0
        body = []
        for line in lines:
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                if key.strip() == "cell_measure":
                    cell = float(val)
            elif line.strip():
                body.append(line)
        rows = list(csv.reader(body))
        if not rows or rows[0] != ["value"]:
            raise DomainError("sampled CSV must have a 'value' header")
        return cls(tuple(float(r[0]) for r in rows[1:]), cell)


def rearrange_sampled(f: SampledFunction) -> SampledFunction:
    return SampledFunction(tuple(np.sort(f.array)[::-1]), f.cell_measure)


def sample_radial(
    u: Callable[[float], float], ctx: DimensionContext, total_measure: float, cells: int
) -> SampledFunction:
    """Sample ``u`` on ``cells`` concentric shells of equal measure.

    The value of each shell is taken at its measure midpoint.
    """
    h = total_measure / cells
    vals = [u(ctx.radius_of_measure((k + 0.5) * h)) for k in range(cells)]
    return SampledFunction(tuple(vals), h)
