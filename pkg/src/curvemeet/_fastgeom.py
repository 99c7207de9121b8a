"""Integer-scaled kernels for the inner loops.

Rational coordinates are rescaled once to a common integer grid; sign
tests, window queries and squared distances then run on plain ints.
Results are exact: this is a representation change, not an
approximation.  Squared distances appear as (num, den) pairs because the
projection case divides by a segment's squared length.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exact_geom import Point

IntPoint = tuple[int, int]


def lcm_denominators(points: Iterable[Point]) -> int:
    d = 1
    for p in points:
        d = math.lcm(d, p.x.denominator, p.y.denominator)
    return d


def scale_points(points: Sequence[Point], scale: int) -> list[IntPoint]:
    return [
        (
            p.x.numerator * (scale // p.x.denominator),
            p.y.numerator * (scale // p.y.denominator),
        )
        for p in points
    ]


def common_scale(*point_groups: Sequence[Point]) -> tuple[list[list[IntPoint]], int]:
    scale = 1
    for group in point_groups:
        scale = math.lcm(scale, lcm_denominators(group))
    return [scale_points(g, scale) for g in point_groups], scale


def seg_point_sqdist(
    ax: int, ay: int, bx: int, by: int, px: int, py: int
) -> tuple[int, int]:
    """Squared distance from (px,py) to closed segment, as num/den."""
    wx, wy = bx - ax, by - ay
    vx, vy = px - ax, py - ay
    dot = vx * wx + vy * wy
    if dot <= 0:
        return vx * vx + vy * vy, 1
    ww = wx * wx + wy * wy
    if dot >= ww:
        ux, uy = px - bx, py - by
        return ux * ux + uy * uy, 1
    return (vx * vx + vy * vy) * ww - dot * dot, ww


def _in_box(ax: int, ay: int, bx: int, by: int, px: int, py: int) -> bool:
    lox, hix = (ax, bx) if ax <= bx else (bx, ax)
    loy, hiy = (ay, by) if ay <= by else (by, ay)
    return lox <= px <= hix and loy <= py <= hiy


def segments_intersect(
    ax: int, ay: int, bx: int, by: int, cx: int, cy: int, dx: int, dy: int
) -> bool:
    """Closed-segment intersection test on integer coordinates."""
    o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    if ((o1 > 0) != (o2 > 0)) and o1 != 0 and o2 != 0:
        if ((o3 > 0) != (o4 > 0)) and o3 != 0 and o4 != 0:
            return True
    if o1 == 0 and _in_box(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _in_box(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _in_box(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _in_box(cx, cy, dx, dy, bx, by):
        return True
    return False


def seg_seg_sqdist(
    ax: int, ay: int, bx: int, by: int, cx: int, cy: int, dx: int, dy: int
) -> tuple[int, int]:
    if segments_intersect(ax, ay, bx, by, cx, cy, dx, dy):
        return 0, 1
    cands = (
        seg_point_sqdist(ax, ay, bx, by, cx, cy),
        seg_point_sqdist(ax, ay, bx, by, dx, dy),
        seg_point_sqdist(cx, cy, dx, dy, ax, ay),
        seg_point_sqdist(cx, cy, dx, dy, bx, by),
    )
    best = cands[0]
    for n, d in cands[1:]:
        if n * best[1] < best[0] * d:
            best = (n, d)
    return best


class PolylineIndex:
    """Segments of an integer polyline indexed two ways.

    An x-sorted list serves window queries for the crossing sweep.  For
    distance queries a bounding-box tree over the segments in curve
    order is built on first use; branch-and-bound descent visits only
    the nodes whose box is closer than the best distance found so far,
    which stays logarithmic even when the polyline resolution is much
    finer than the distances involved.
    """

    __slots__ = ("segs", "minxs", "max_extent", "_pts", "_nodes", "_root")

    def __init__(self, ipts: Sequence[IntPoint]):
        if len(ipts) < 2:
            raise ValueError("empty polyline")
        segs = []
        for idx, ((ax, ay), (bx, by)) in enumerate(zip(ipts, ipts[1:])):
            minx, maxx = (ax, bx) if ax <= bx else (bx, ax)
            miny, maxy = (ay, by) if ay <= by else (by, ay)
            segs.append((minx, maxx, miny, maxy, ax, ay, bx, by, idx))
        segs.sort(key=lambda s: s[0])
        self.segs = segs
        self.minxs = [s[0] for s in segs]
        self.max_extent = max(s[1] - s[0] for s in segs)
        self._pts = list(ipts)
        self._nodes: list[tuple] | None = None
        self._root = 0

    def overlapping(self, xlo: int, xhi: int) -> Iterator[tuple]:
        """Segments whose x-range meets [xlo, xhi]."""
        segs, minxs = self.segs, self.minxs
        stop = xlo - self.max_extent
        for i in range(bisect_right(minxs, xhi) - 1, -1, -1):
            seg = segs[i]
            if seg[0] < stop:
                break
            if seg[1] >= xlo:
                yield seg

    def _tree(self) -> list[tuple]:
        # node: (minx, maxx, miny, maxy, left, right, ax, ay, bx, by);
        # left/right are node indices, -1 marks a leaf holding a segment
        if self._nodes is not None:
            return self._nodes
        pts = self._pts
        nodes: list[tuple] = []

        def build(lo: int, hi: int) -> int:
            if hi - lo == 1:
                ax, ay = pts[lo]
                bx, by = pts[lo + 1]
                minx, maxx = (ax, bx) if ax <= bx else (bx, ax)
                miny, maxy = (ay, by) if ay <= by else (by, ay)
                nodes.append((minx, maxx, miny, maxy, -1, -1, ax, ay, bx, by))
            else:
                mid = (lo + hi) // 2
                li = build(lo, mid)
                ri = build(mid, hi)
                lnode, rnode = nodes[li], nodes[ri]
                nodes.append(
                    (
                        min(lnode[0], rnode[0]),
                        max(lnode[1], rnode[1]),
                        min(lnode[2], rnode[2]),
                        max(lnode[3], rnode[3]),
                        li,
                        ri,
                        0,
                        0,
                        0,
                        0,
                    )
                )
            return len(nodes) - 1

        self._root = build(0, len(pts) - 1)
        self._nodes = nodes
        return nodes

    def sq_dist_to_point(self, px: int, py: int) -> Fraction:
        """Exact squared distance from an integer point to the polyline."""
        nodes = self._tree()
        best_n: int | None = None
        best_d = 1
        # stack holds (squared box gap, node); gaps are computed once at
        # push time and rechecked against the improving bound at pop time
        stack = [(0, nodes[self._root])]
        push = stack.append
        pop = stack.pop
        while stack:
            gap_sq, node = pop()
            if best_n is not None and gap_sq * best_d >= best_n:
                continue
            li = node[4]
            if li < 0:
                n, d = seg_point_sqdist(
                    node[6], node[7], node[8], node[9], px, py
                )
                if best_n is None or n * best_d < best_n * d:
                    best_n, best_d = n, d
            else:
                lnode = nodes[li]
                rnode = nodes[node[5]]
                xg = lnode[0] - px if px < lnode[0] else (px - lnode[1] if px > lnode[1] else 0)
                yg = lnode[2] - py if py < lnode[2] else (py - lnode[3] if py > lnode[3] else 0)
                lgap = xg * xg + yg * yg
                xg = rnode[0] - px if px < rnode[0] else (px - rnode[1] if px > rnode[1] else 0)
                yg = rnode[2] - py if py < rnode[2] else (py - rnode[3] if py > rnode[3] else 0)
                rgap = xg * xg + yg * yg
                # nearer child on top of the stack
                if lgap <= rgap:
                    push((rgap, rnode))
                    push((lgap, lnode))
                else:
                    push((lgap, lnode))
                    push((rgap, rnode))
        assert best_n is not None
        return Fraction(best_n, best_d)


def min_sqdist_exceeds(
    a_ipts: Sequence[IntPoint],
    b_index: PolylineIndex,
    threshold: Fraction,
    scale: int,
) -> bool:
    """True iff every segment pair of the two polylines is strictly
    farther apart than sqrt(threshold) (threshold in unscaled units)."""
    tn = threshold.numerator * scale * scale
    td = threshold.denominator
    radius = math.isqrt(tn // td) + 1
    for (ax, ay), (bx, by) in zip(a_ipts, a_ipts[1:]):
        xlo = (ax if ax <= bx else bx) - radius
        xhi = (ax if ax >= bx else bx) + radius
        ylo = (ay if ay <= by else by) - radius
        yhi = (ay if ay >= by else by) + radius
        for seg in b_index.overlapping(xlo, xhi):
            if seg[3] < ylo or seg[2] > yhi:
                continue
            n, d = seg_seg_sqdist(ax, ay, bx, by, seg[4], seg[5], seg[6], seg[7])
            if n * td <= tn * d:
                return False
    return True
