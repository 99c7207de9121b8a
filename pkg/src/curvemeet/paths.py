"""Curve oracles and their polygon approximations.

A path oracle answers two questions about a curve f: a rational point
within 2^-n of f(t), and a modulus m(n) such that parameters closer than
2^-m(n) map to values closer than 2^-n.  That is the entire interface;
everything downstream (tracks, crossing parity, refinement) consumes
curves only through it.

Unit-square curves are extended by straight tails to the domain [-1, 2]
so that the two extended curves cross an odd number of times; the lower
extension enters along y = 0 and leaves along y = 1, the upper one the
other way around.
"""

from __future__ import annotations

import enum
import random
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._fastgeom import lcm_denominators, scale_points
from .errors import EndpointViolation, OutOfDomain, PreconditionViolated
from .exact_geom import (
    Interval,
    Line,
    Point,
    ceil_log2,
    interval,
    pow2,
    pt,
    rat,
)
from .track import Track, line_set, spiral_search

_JITTER_SPAN = 32  # random vertex offsets stay within 32 pitches per axis


class PathOracle(ABC):
    """A curve known through approximations and a continuity modulus."""

    @property
    @abstractmethod
    def domain(self) -> Interval: ...

    @abstractmethod
    def eval_approx(self, t: Fraction, n: int) -> Point:
        """A rational point within 2^-n of the exact value at t."""

    @abstractmethod
    def modulus(self, n: int) -> int:
        """m with |t - t'| < 2^-m  =>  |f(t) - f(t')| < 2^-n."""

    def _check_param(self, t: Fraction) -> None:
        if t not in self.domain:
            raise OutOfDomain(f"parameter {t} outside {self.domain}")


def _lipschitz_shift(l1_bound: Fraction) -> int:
    """Modulus offset from an L1 derivative bound (Euclidean <= L1)."""
    return ceil_log2(max(l1_bound, Fraction(1)))


class PolylinePath(PathOracle):
    """Piecewise-linear curve; evaluation is exact at every precision.

    Unlike a Track, consecutive sample points may coincide (the curve may
    pause), so this class cannot double as a crossing-count operand.
    """

    def __init__(self, entries: Iterable[tuple]):
        cooked: list[tuple[Fraction, Point]] = []
        for s, p in entries:
            point = p if isinstance(p, Point) else pt(p[0], p[1])
            cooked.append((rat(s), point))
        if len(cooked) < 2:
            raise ValueError("a polyline needs at least two samples")
        for (s0, _), (s1, _) in zip(cooked, cooked[1:]):
            if s1 <= s0:
                raise ValueError("polyline parameters must increase strictly")
        self._entries = tuple(cooked)
        self._params = tuple(s for s, _ in cooked)
        slope = Fraction(0)
        for (s0, a), (s1, b) in zip(cooked, cooked[1:]):
            d = b - a
            slope = max(slope, (abs(d.x) + abs(d.y)) / (s1 - s0))
        self._shift = _lipschitz_shift(slope)

    @property
    def entries(self) -> tuple[tuple[Fraction, Point], ...]:
        return self._entries

    @property
    def domain(self) -> Interval:
        return Interval(self._params[0], self._params[-1])

    def eval_approx(self, t: Fraction, n: int) -> Point:
        self._check_param(t)
        i = bisect_right(self._params, t) - 1
        if i == len(self._params) - 1:
            return self._entries[-1][1]
        s0, a = self._entries[i]
        s1, b = self._entries[i + 1]
        return a + (b - a).scale((t - s0) / (s1 - s0))

    def modulus(self, n: int) -> int:
        return n + self._shift


class QuadBezierPath(PathOracle):
    """Quadratic Bezier on [0, 1], evaluated exactly by de Casteljau."""

    def __init__(self, p0: Point, p1: Point, p2: Point):
        self.p0, self.p1, self.p2 = p0, p1, p2
        d1, d2 = p1 - p0, p2 - p1
        bound = 2 * max(abs(d1.x) + abs(d1.y), abs(d2.x) + abs(d2.y))
        self._shift = _lipschitz_shift(Fraction(bound))

    @property
    def domain(self) -> Interval:
        return interval(0, 1)

    def eval_approx(self, t: Fraction, n: int) -> Point:
        self._check_param(t)
        a = self.p0 + (self.p1 - self.p0).scale(t)
        b = self.p1 + (self.p2 - self.p1).scale(t)
        return a + (b - a).scale(t)

    def modulus(self, n: int) -> int:
        return n + self._shift


class TablePath(PolylinePath):
    """Sampled curve with a caller-asserted continuity modulus.

    The samples are interpolated linearly, but the modulus is whatever
    the caller claims (a plain shift n -> n + offset, or any callable).
    `validate` rejects claims that the sample table itself refutes; a
    modulus can never be fully verified from finitely many samples.
    """

    def __init__(
        self,
        entries: Iterable[tuple],
        modulus_offset: int | None = None,
        modulus_fn: Callable[[int], int] | None = None,
    ):
        super().__init__(entries)
        if (modulus_offset is None) == (modulus_fn is None):
            raise ValueError("give exactly one of modulus_offset, modulus_fn")
        if modulus_offset is not None and modulus_offset < 0:
            raise ValueError("modulus offset must be non-negative")
        self._offset = modulus_offset
        self._fn = modulus_fn

    def modulus(self, n: int) -> int:
        if self._offset is not None:
            return n + self._offset
        return self._fn(n)  # type: ignore[misc]

    def validate(self, max_n: int = 64) -> None:
        """Cross-check the asserted modulus against all sample pairs."""
        for n in range(max_n):
            if self.modulus(n + 1) <= self.modulus(n):
                raise PreconditionViolated("modulus is not increasing")
        entries = self._entries
        for i in range(len(entries)):
            ti, zi = entries[i]
            for j in range(i + 1, len(entries)):
                tj, zj = entries[j]
                dt = tj - ti
                sq = (zj - zi).sq_norm()
                for n in range(max_n):
                    if dt >= pow2(-self.modulus(n)):
                        break
                    if sq >= pow2(-2 * n):
                        raise PreconditionViolated(
                            f"samples at {ti} and {tj} refute the modulus at n={n}"
                        )


class Side(enum.Enum):
    """Which corner pattern the straight tails follow."""

    LOWER = "lower"  # enters at (0,0) along y=0, leaves from (1,1) along y=1
    UPPER = "upper"  # enters at (0,1) along y=1, leaves from (1,0) along y=0


_CORNERS = {
    Side.LOWER: (pt(0, 0), pt(1, 1)),
    Side.UPPER: (pt(0, 1), pt(1, 0)),
}


@dataclass(frozen=True)
class ExtendedPath(PathOracle):
    """A unit-square path continued by straight tails to [-1, 2]."""

    inner: PathOracle
    side: Side

    @property
    def domain(self) -> Interval:
        return interval(-1, 2)

    def eval_approx(self, t: Fraction, n: int) -> Point:
        self._check_param(t)
        left_y, right_y = (0, 1) if self.side is Side.LOWER else (1, 0)
        if t <= 0:
            return pt(t, left_y)
        if t >= 1:
            return pt(t, right_y)
        return self.inner.eval_approx(t, n)

    def modulus(self, n: int) -> int:
        # one extra bit pays for parameter pairs straddling a junction:
        # split at the junction and add the two halves' deviations
        return max(self.inner.modulus(n + 1), n + 1)


def extend(path: PathOracle, side: Side, check_precision: int = 20) -> ExtendedPath:
    """Attach straight tails after checking the corner conditions.

    The corners can only be refuted, not confirmed, from approximations:
    the path is rejected iff its value at 0 or 1 is provably farther than
    the evaluation error allows from the required corner.
    """
    if path.domain != interval(0, 1):
        raise ValueError("only unit-interval paths can be extended")
    tol_sq = (2 * pow2(-check_precision)) ** 2
    for t, corner in zip((Fraction(0), Fraction(1)), _CORNERS[side]):
        z = path.eval_approx(t, check_precision)
        if (z - corner).sq_norm() > tol_sq:
            raise EndpointViolation(
                f"path value at {t} is provably not the corner {corner}"
            )
    return ExtendedPath(path, side)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def dyadic_grid(lo: Fraction, hi: Fraction, md: int) -> list[Fraction]:
    """Endpoints plus all multiples of 2^-(md+1) strictly between them.

    Every gap is positive and strictly below 2^-md.
    """
    if lo >= hi:
        raise ValueError("empty parameter interval")
    scale = 2 ** (md + 1)
    k0 = _floor(lo * scale) + 1
    k1 = -_floor(-hi * scale) - 1
    inner = [Fraction(k, scale) for k in range(k0, k1 + 1)]
    return [lo, *inner, hi]


def _approx_vertices(
    f: PathOracle,
    grid: Sequence[Fraction],
    n: int,
    accept_extra: Callable[[Point, Point | None], bool],
    rng: random.Random | None,
) -> list[Point]:
    """Vertices within 2^-n of f on the grid, adjacent ones distinct.

    Each vertex starts from an evaluation at precision n+2 (plus an
    optional random sub-budget jitter) and walks a dyadic spiral of pitch
    2^-(n+8) until the predicates accept; the combined offset stays
    strictly below 2^-n.
    """
    pitch = pow2(-(n + 8))
    sq_budget = pow2(-(n + 2)) ** 2
    out: list[Point] = []
    for s in grid:
        base = f.eval_approx(s, n + 2)
        if rng is not None:
            i = rng.randint(-_JITTER_SPAN, _JITTER_SPAN)
            j = rng.randint(-_JITTER_SPAN, _JITTER_SPAN)
            base = Point(base.x + i * pitch, base.y + j * pitch)
        prev = out[-1] if out else None
        # the unmoved evaluation is almost always acceptable; the spiral
        # machinery is only paid for on rejection
        if (prev is None or base != prev) and accept_extra(base, prev):
            out.append(base)
            continue

        def ok(cand: Point, _prev: Point | None = prev) -> bool:
            if _prev is not None and cand == _prev:
                return False
            return accept_extra(cand, _prev)

        out.append(spiral_search(base, pitch, sq_budget, ok))
    return out


def n_approximation(
    f: PathOracle,
    i: Interval,
    n: int,
    rng: random.Random | None = None,
) -> Track:
    """A track following f on i: gaps below 2^-modulus(n), vertices
    within 2^-n of the curve, consecutive vertices distinct."""
    if not f.domain.contains_interval(i):
        raise OutOfDomain(f"{i} is not inside {f.domain}")
    if i.lo >= i.hi:
        raise ValueError("empty parameter interval")
    grid = dyadic_grid(i.lo, i.hi, f.modulus(n))
    pts = _approx_vertices(f, grid, n, lambda c, p: True, rng)
    return Track(tuple(zip(grid, pts)))


def n_approximation_pair(
    f: PathOracle,
    g: PathOracle,
    i: Interval,
    j: Interval,
    n: int,
    rng: random.Random | None = None,
) -> tuple[Track, Track]:
    """Weakly separated approximation tracks for f on i and g on j.

    Two phases: the f-track is built freely, then each g-vertex is also
    required to avoid every spanned line of the f-track and to span with
    its predecessor a line through no f-vertex.  Separation therefore
    holds by construction, not by rejection sampling.
    """
    p = n_approximation(f, i, n, rng)
    scale = lcm_denominators(p.points)
    p_scaled = scale_points(p.points, scale)
    lines_p = [(ln.A, ln.B, ln.C) for ln in line_set(p)]

    def clears(cand: Point, prev: Point | None) -> bool:
        xn, xd = cand.x.numerator, cand.x.denominator
        yn, yd = cand.y.numerator, cand.y.denominator
        u, v, w = xn * yd, yn * xd, xd * yd
        for a, b, c in lines_p:
            if a * u + b * v == c * w:
                return False
        if prev is not None:
            ln = Line.through(prev, cand)
            a, b, c_scaled = ln.A, ln.B, ln.C * scale
            for vx, vy in p_scaled:
                if a * vx + b * vy == c_scaled:
                    return False
        return True

    if not g.domain.contains_interval(j):
        raise OutOfDomain(f"{j} is not inside {g.domain}")
    if j.lo >= j.hi:
        raise ValueError("empty parameter interval")
    grid = dyadic_grid(j.lo, j.hi, g.modulus(n))
    pts = _approx_vertices(g, grid, n, clears, rng)
    return p, Track(tuple(zip(grid, pts)))


def diagonal_pair() -> tuple[PolylinePath, PolylinePath]:
    """The two straight unit-square diagonals; they cross at (1/2, 1/2)."""
    phi = PolylinePath([(0, (0, 0)), (1, (1, 1))])
    psi = PolylinePath([(0, (0, 1)), (1, (1, 0))])
    return phi, psi


def curved_pair() -> tuple[QuadBezierPath, QuadBezierPath]:
    """A bent corner-to-corner pair with a single transversal crossing."""
    phi = QuadBezierPath(pt(0, 0), pt("1/5", "4/5"), pt(1, 1))
    psi = QuadBezierPath(pt(0, 1), pt("1/2", "1/10"), pt(1, 0))
    return phi, psi
