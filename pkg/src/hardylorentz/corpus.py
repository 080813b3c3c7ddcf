"""Seeded random admissible profiles for property checks.

Every profile is continuous and non-increasing, so its gradient is a
genuine function. With ``a = (n-p)/p`` the kinds are:

``compact``        Lipschitz start ``d + c r^alpha`` (``alpha >= 1``), compact support;
``singular``       core ``c r^alpha`` with ``-a < alpha < 0``, compact support;
``tail``           Lipschitz start, decaying tail ``c r^alpha`` with ``alpha < -a``;
``singular_tail``  both.

The exponent windows keep ``||u||_{p*,q}``, ``||grad u||_{p,q}`` and the
Hardy integral finite for every ``q``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .profile import PowerAffineSegment, RadialProfile

KINDS = ("compact", "singular", "tail", "singular_tail")
COMPACT_KINDS = ("compact", "singular")


class CorpusProfile(NamedTuple):
    ident: str
    kind: str
    profile: RadialProfile


def _middle_exponent(rng) -> float:
    while True:
        x = float(rng.uniform(-2.0, 3.0))
        if abs(x) >= 0.2:
            return x


def _joining_segment(alpha, r0, v0, r1, v1) -> PowerAffineSegment:
    """``c r^alpha + d`` through ``(r0, v0)`` and ``(r1, v1)``."""
    c = (v0 - v1) / (r0 ** alpha - r1 ** alpha)
    d = v0 - c * r0 ** alpha
    if v1 == 0.0:
        # land exactly on zero so the last value is not a rounding residue
        d = -c * r1 ** alpha
    return PowerAffineSegment(c, alpha, d, r0, r1)


def random_profile(rng: np.random.Generator, n: int, p: float, kind: str,
                   segments: int | None = None) -> RadialProfile:
    if kind not in KINDS:
        raise ValueError(f"unknown corpus kind {kind!r}")
    a = (n - p) / p
    k = int(rng.integers(1, 4)) if segments is None else segments
    singular = kind.startswith("singular")
    tail = kind.endswith("tail")
    # radii 0 < r_1 < ... < r_{k+1}; values strictly decreasing, last one 0 unless tail
    gaps = rng.uniform(0.15, 1.0, size=k + 1)
    radii = np.cumsum(gaps) * float(rng.uniform(0.3, 3.0))
    top = float(rng.uniform(0.5, 3.0))
    drops = rng.uniform(0.1, 1.0, size=k + 1)
    floor = float(rng.uniform(0.05, 0.5)) * top if tail else 0.0
    vals = floor + (top - floor) * (1.0 - np.cumsum(drops) / drops.sum())
    vals[-1] = floor
    vals = [float(v) for v in vals]
    radii = [float(r) for r in radii]

    segs = []
    r0 = radii[0]
    if singular:
        alpha = -a * float(rng.uniform(0.1, 0.9))
        v0 = top
        segs.append(PowerAffineSegment(v0 / r0 ** alpha, alpha, 0.0, 0.0, r0))
    else:
        alpha = float(rng.uniform(1.0, 3.0))
        v0 = top
        start = top * float(rng.uniform(1.05, 1.6))
        c = (v0 - start) / r0 ** alpha
        segs.append(PowerAffineSegment(c, alpha, start, 0.0, r0))
    prev_r, prev_v = r0, v0
    for r1, v1 in zip(radii[1:], vals[1:]):
        segs.append(_joining_segment(_middle_exponent(rng), prev_r, prev_v, r1, v1))
        prev_r, prev_v = r1, v1
    if tail:
        alpha = -a - float(rng.uniform(0.1, 1.5))
        segs.append(PowerAffineSegment(prev_v / prev_r ** alpha, alpha, 0.0, prev_r, math.inf))
    else:
        segs.append(PowerAffineSegment(0.0, 0.0, 0.0, prev_r, math.inf))
    return RadialProfile(segs)


def corpus(n: int, p: float, size: int, seed: int = 0, kinds=KINDS) -> list[CorpusProfile]:
    """``size`` profiles cycling through ``kinds``, reproducible from ``seed``."""
    rng = np.random.default_rng([seed, n, int(round(1000 * p))])
    out = []
    for i in range(size):
        kind = kinds[i % len(kinds)]
        out.append(CorpusProfile(f"{kind}-{i}", kind, random_profile(rng, n, p, kind)))
    return out


def unit_support(u: RadialProfile) -> RadialProfile:
    """Dilate a compactly supported profile so that it vanishes exactly from ``r = 1`` on."""
    return u.dilate(u.support_radius())
