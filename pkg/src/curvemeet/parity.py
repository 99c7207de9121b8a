"""Crossing counts of separated tracks and crossing parity of curves.

For weakly separated tracks every incidence is a transversal interior
crossing, so counting reduces to orientation signs.  The parity of that
count is invariant across all sufficiently fine separated approximation
pairs of a curve pair whose endpoint clearance (alpha) dominates the
approximation error by a factor 16; `function_parity` certifies that
clearance from below and then counts one pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ._fastgeom import PolylineIndex, common_scale, min_sqdist_exceeds
from .errors import (
    EffortExhausted,
    NotSeparated,
    PreconditionViolated,
    SeparationInvariantError,
)
from .exact_geom import Interval, Point, pow2, smallest_n_below, sqrt_enclosure
from .paths import PathOracle, n_approximation, n_approximation_pair
from .track import Track, weakly_separated

Crossing = tuple[Fraction, Fraction, Point]


@dataclass(frozen=True)
class CrossingReport:
    """Proper crossings of two tracks, ordered along the first track
    (lexicographically by segment pair)."""

    crossings: tuple[Crossing, ...]
    count: int
    parity: int

    def __post_init__(self) -> None:
        if self.count != len(self.crossings) or self.parity != self.count % 2:
            raise ValueError("inconsistent crossing report")


def _report(crossings: list[Crossing]) -> CrossingReport:
    return CrossingReport(tuple(crossings), len(crossings), len(crossings) % 2)


def crossing_count(p: Track, q: Track) -> CrossingReport:
    """Count and locate the crossings of two weakly separated tracks.

    Weak separation is verified up front.  It rules out every vertex
    incidence, so inside the loop a zero orientation sign is not a
    boundary case to classify but an internal consistency failure.
    """
    if not weakly_separated(p, q):
        raise NotSeparated("tracks are not weakly separated")
    (pi, qi), _scale = common_scale(list(p.points), list(q.points))
    qidx = PolylineIndex(qi)
    p_entries = p.entries
    q_entries = q.entries

    hits: list[tuple[int, int, int, int, int, int]] = []
    for i in range(len(pi) - 1):
        ax, ay = pi[i]
        bx, by = pi[i + 1]
        pminx, pmaxx = (ax, bx) if ax <= bx else (bx, ax)
        pminy, pmaxy = (ay, by) if ay <= by else (by, ay)
        for seg in qidx.overlapping(pminx, pmaxx):
            if seg[3] < pminy or seg[2] > pmaxy:
                continue
            cx, cy, dx, dy, j = seg[4], seg[5], seg[6], seg[7], seg[8]
            o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
            if o1 == 0 or o2 == 0:
                raise SeparationInvariantError(
                    "vertex incidence inside a separated crossing scan"
                )
            if (o1 > 0) == (o2 > 0):
                continue
            o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
            o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
            if o3 == 0 or o4 == 0:
                raise SeparationInvariantError(
                    "vertex incidence inside a separated crossing scan"
                )
            if (o3 > 0) == (o4 > 0):
                continue
            hits.append((i, j, o1, o2, o3, o4))

    hits.sort(key=lambda h: (h[0], h[1]))
    crossings: list[Crossing] = []
    for i, j, o1, o2, o3, o4 in hits:
        u = Fraction(o3, o3 - o4)  # position along p's segment
        v = Fraction(o1, o1 - o2)  # position along q's segment
        s0, a = p_entries[i]
        s1, b = p_entries[i + 1]
        t0, _ = q_entries[j]
        t1, _ = q_entries[j + 1]
        point = a + (b - a).scale(u)
        crossings.append((s0 + u * (s1 - s0), t0 + v * (t1 - t0), point))
    return _report(crossings)


@dataclass(frozen=True)
class AlphaEnclosure:
    """Interval around the endpoint clearance of a curve pair: the
    smaller of (distance of f's endpoint values to g's arc) and
    (distance of g's endpoint values to f's arc)."""

    lo: Fraction
    hi: Fraction
    precision_used: int

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi):
            raise ValueError("enclosure bounds out of order")


def alpha_enclosure(
    f: PathOracle, g: PathOracle, i: Interval, j: Interval, n: int
) -> AlphaEnclosure:
    """Two-sided bound on the endpoint clearance at working precision n.

    Measured between approximation tracks, then widened by the vertex
    error (2^-n) plus the polygon-vs-curve error (5 * 2^-n) per side.
    """
    p = n_approximation(f, i, n)
    q = n_approximation(g, j, n)
    (pi, qi), scale = common_scale(list(p.points), list(q.points))
    sq_scale = Fraction(scale * scale)
    qidx = PolylineIndex(qi)
    pidx = PolylineIndex(pi)
    d_f_ends = min(
        qidx.sq_dist_to_point(*pi[0]), qidx.sq_dist_to_point(*pi[-1])
    ) / sq_scale
    d_g_ends = min(
        pidx.sq_dist_to_point(*qi[0]), pidx.sq_dist_to_point(*qi[-1])
    ) / sq_scale
    e1 = sqrt_enclosure(d_f_ends, n)
    e2 = sqrt_enclosure(d_g_ends, n)
    pad = 6 * pow2(-n)
    lo = min(e1.lo, e2.lo) - pad
    hi = min(e1.hi, e2.hi) + pad
    return AlphaEnclosure(max(Fraction(0), lo), hi, n)


def certify_alpha(
    f: PathOracle,
    g: PathOracle,
    i: Interval,
    j: Interval,
    effort: int = 64,
    probe_start: int = 5,
    target: Fraction = Fraction(0),
) -> AlphaEnclosure:
    """Refine the clearance enclosure until its floor exceeds target.

    Raises PreconditionViolated if some enclosure proves the clearance
    is at most target, EffortExhausted if precision `effort` is reached
    without a decision.
    """
    enc = alpha_enclosure(f, g, i, j, probe_start)
    probe = probe_start
    hint = smallest_n_below(enc.hi / 16)
    if enc.lo <= target and hint > probe:
        probe = min(hint, effort)
        enc = alpha_enclosure(f, g, i, j, probe)
    while enc.lo <= target:
        if enc.hi <= target:
            raise PreconditionViolated(
                f"endpoint clearance is provably at most {target}"
            )
        if probe >= effort:
            raise EffortExhausted(
                f"clearance > {target} not certified up to precision {effort}"
            )
        probe = min(2 * probe, effort)
        enc = alpha_enclosure(f, g, i, j, probe)
    return enc


def function_parity(
    f: PathOracle,
    g: PathOracle,
    i: Interval,
    j: Interval,
    effort: int = 64,
    n: int | None = None,
    probe_start: int = 5,
    rng: random.Random | None = None,
) -> int:
    """Crossing parity of f on i versus g on j.

    With n omitted, a working precision satisfying 16 * 2^-n < alpha is
    certified first; passing n explicitly asserts that bound and skips
    certification.  If the approximation polygons are provably far apart
    the parity is 0 without any crossing enumeration.
    """
    if n is None:
        enc = certify_alpha(f, g, i, j, effort, probe_start)
        n = smallest_n_below(enc.lo / 16)
    p, q = n_approximation_pair(f, g, i, j, n, rng)
    (pi, qi), scale = common_scale(list(p.points), list(q.points))
    threshold = (11 * pow2(-n)) ** 2
    if min_sqdist_exceeds(pi, PolylineIndex(qi), threshold, scale):
        return 0
    return crossing_count(p, q).parity
