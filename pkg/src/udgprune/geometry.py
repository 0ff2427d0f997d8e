"""Geometry of unit-disk coverage.

Exact areas of lens (two-disk) and three-disk intersections, disks
truncated by a square habitat, and the "omitted region" of a disk left
uncovered by two other disks; plus the partition of a small central disk
into opposed angular sectors and a hit-or-miss Monte Carlo area oracle
used to cross-check every exact formula.

All disks have radius 1, so lengths are expressed in units of the disk
radius.  Every function is a pure function of its arguments; the Monte
Carlo oracle derives all randomness from an explicit seed, so everything
here is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

__all__ = [
    "Point2D",
    "SquareRegion",
    "SectorFrame",
    "AreaEstimate",
    "dist",
    "lens_area",
    "circle_intersection_points",
    "triple_disk_intersection_area",
    "omitted_area",
    "omitted_area_at_angle",
    "omitted_area_on_circle",
    "on_circle_pair_lens",
    "truncated_disk_area",
    "truncated_omitted_area",
    "sector_of",
    "extreme_points",
    "mc_area_oracle",
    "disk_membership",
]

TANGENCY_EPS = 1e-12  # |d - 2| below this is treated as exact tangency
_VERTEX_EPS = 1e-10   # slack when deciding whether an arc vertex lies in a disk
_MC_CHUNK = 1 << 20


class Point2D(NamedTuple):
    """Planar point.  Any (x, y) pair is accepted wherever a point is expected."""

    x: float
    y: float


@dataclass(frozen=True)
class SquareRegion:
    """The habitat square [0, side] x [0, side]."""

    side: float

    def __post_init__(self):
        if not (math.isfinite(self.side) and self.side > 0):
            raise ValueError(f"square side must be positive and finite, got {self.side!r}")

    def contains(self, p) -> bool:
        return 0.0 <= p[0] <= self.side and 0.0 <= p[1] <= self.side


@dataclass(frozen=True)
class AreaEstimate:
    """An area value with its Monte Carlo uncertainty (zero when exact)."""

    value: float
    std_error: float = 0.0
    samples: int = 0


@dataclass(frozen=True)
class SectorFrame:
    """Partition of the small disk of radius ``delta`` about ``center`` into
    ``2 * count`` angular sectors.

    For a size parameter ``b`` the derived quantities are

        delta = 1 / (b^(1/3) * ln b)
        count = floor(b^(1/3) * (ln b)^log_exponent)
        theta = pi / count

    Sector ``(Q, i)`` spans polar angles [(i - 1/2) theta, (i + 1/2) theta]
    about the center, and ``(R, i)`` is its reflection through the center.
    Logs are natural logs; ``log_exponent`` may be 1.5 (default) or 2.0 —
    both appear in the literature and only the sector count differs.
    """

    center: Point2D
    b: int
    log_exponent: float = 1.5

    def __post_init__(self):
        _require_finite(self.center)
        if self.b < 2:
            raise ValueError(f"size parameter b must be an integer >= 2, got {self.b!r}")
        if self.log_exponent not in (1.5, 2.0):
            raise ValueError(f"log_exponent must be 1.5 or 2.0, got {self.log_exponent!r}")
        if self.count < 1:
            raise ValueError(f"b={self.b} too small: derived sector count is zero")

    @property
    def delta(self) -> float:
        ln = math.log(self.b)
        return 1.0 / (self.b ** (1.0 / 3.0) * ln)

    @property
    def count(self) -> int:
        ln = math.log(self.b)
        return int(math.floor(self.b ** (1.0 / 3.0) * ln**self.log_exponent))

    @property
    def theta(self) -> float:
        return math.pi / self.count


def _require_finite(*points):
    for p in points:
        if not (math.isfinite(p[0]) and math.isfinite(p[1])):
            raise ValueError(f"non-finite point {tuple(p)!r}")


def dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def lens_area(d: float) -> float:
    """Area of the intersection of two unit disks whose centers are ``d`` apart.

    Equals 2*arccos(d/2) - (d/2)*sqrt(4 - d^2) for d < 2, and 0 for
    disjoint or tangent disks.
    """
    if not math.isfinite(d) or d < 0:
        raise ValueError(f"center distance must be finite and >= 0, got {d!r}")
    if d >= 2.0 - TANGENCY_EPS:
        return 0.0
    half = 0.5 * d
    return 2.0 * math.acos(half) - half * math.sqrt(4.0 - d * d)


def circle_intersection_points(p, q) -> tuple[Point2D, Point2D]:
    """The two points where the unit circles about ``p`` and ``q`` meet.

    Requires 0 < d(p, q) < 2.  The chord joining the two returned points
    is the perpendicular bisector of the segment p-q.
    """
    _require_finite(p, q)
    d = dist(p, q)
    if d <= 0.0 or d >= 2.0:
        raise ValueError(f"circles at distance {d!r} do not meet in two points")
    mx, my = 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])
    ux, uy = (q[0] - p[0]) / d, (q[1] - p[1]) / d
    h = math.sqrt(max(0.0, 1.0 - 0.25 * d * d))
    # perpendicular to p->q, +90 degrees
    return (
        Point2D(mx - uy * h, my + ux * h),
        Point2D(mx + uy * h, my - ux * h),
    )


def _shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def triple_disk_intersection_area(o, q, u) -> float:
    """Exact area of the intersection of the three unit disks about o, q, u.

    The intersection is convex; its boundary vertices are the pairwise
    circle-intersection points that lie inside the remaining disk.  The
    area is assembled as the polygon spanned by those vertices plus one
    circular segment per boundary arc.  Degenerate cases (coincident
    centers, disjoint or tangent pairs, fewer than three vertices) reduce
    to a pairwise lens or to zero.
    """
    _require_finite(o, q, u)
    centers = [o, q, u]
    d_oq, d_ou, d_qu = dist(o, q), dist(o, u), dist(q, u)

    # coincident centers collapse to a two-disk problem
    if d_oq < TANGENCY_EPS:
        return lens_area(d_ou)
    if d_ou < TANGENCY_EPS or d_qu < TANGENCY_EPS:
        return lens_area(d_oq)
    if max(d_oq, d_ou, d_qu) >= 2.0 - TANGENCY_EPS:
        return 0.0

    verts: list[tuple[Point2D, tuple[int, int]]] = []
    for a_i, b_i, c_i in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        third = centers[c_i]
        for pt in circle_intersection_points(centers[a_i], centers[b_i]):
            dx, dy = pt[0] - third[0], pt[1] - third[1]
            if dx * dx + dy * dy <= 1.0 + 2.0 * _VERTEX_EPS:
                verts.append((pt, (a_i, b_i)))

    if len(verts) <= 1:
        return 0.0
    if len(verts) == 2:
        (p1, pair1), (p2, pair2) = verts
        if pair1 != pair2:
            return 0.0  # two tangency-grade vertices, measure-zero region
        a_i, b_i = pair1
        return lens_area(dist(centers[a_i], centers[b_i]))

    pts = np.array([v[0] for v in verts], dtype=float)
    centroid = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - centroid[1], pts[:, 0] - centroid[0]))
    pts = pts[order]

    area = _shoelace(pts)
    m = len(pts)
    for k in range(m):
        v1 = pts[k]
        v2 = pts[(k + 1) % m]
        area += _boundary_segment_area(v1, v2, centers, centroid)
    return area


def _boundary_segment_area(v1, v2, centers, centroid) -> float:
    """Circular-segment area between chord v1-v2 and the boundary arc joining them."""
    chord = math.hypot(v2[0] - v1[0], v2[1] - v1[1])
    if chord < 1e-15:
        return 0.0
    mx, my = 0.5 * (v1[0] + v2[0]), 0.5 * (v1[1] + v2[1])

    # candidate boundary circles pass through both vertices
    best = None
    best_overshoot = math.inf
    for c in centers:
        r1 = math.hypot(v1[0] - c[0], v1[1] - c[1])
        r2 = math.hypot(v2[0] - c[0], v2[1] - c[1])
        if abs(r1 - 1.0) > 1e-8 or abs(r2 - 1.0) > 1e-8:
            continue
        # midpoint of the arc on the far side of the chord from the center
        wx, wy = mx - c[0], my - c[1]
        wn = math.hypot(wx, wy)
        if wn < 1e-12:
            # chord is a diameter: bulge away from the region instead
            wx, wy = mx - centroid[0], my - centroid[1]
            wn = math.hypot(wx, wy)
            if wn < 1e-12:
                continue
        ax, ay = c[0] + wx / wn, c[1] + wy / wn
        overshoot = max(
            math.hypot(ax - cc[0], ay - cc[1]) - 1.0 for cc in centers
        )
        if overshoot < best_overshoot:
            best_overshoot = overshoot
            best = c
    if best is None or best_overshoot > 1e-6:
        # no circle's outward arc stays inside the region: straight edge
        return 0.0
    theta = 2.0 * math.asin(min(1.0, 0.5 * chord))
    return 0.5 * (theta - math.sin(theta))


def omitted_area(o, q, u) -> float:
    """Area of the part of the unit disk about ``o`` covered by neither the
    unit disk about ``q`` nor the one about ``u``.

    Computed by inclusion-exclusion from the pairwise lenses and the
    exact triple-disk intersection; the result lies in [0, pi] and is
    symmetric in q and u.
    """
    _require_finite(o, q, u)
    if (q[0], q[1]) > (u[0], u[1]):
        q, u = u, q  # canonical order makes the symmetry bitwise exact
    val = (
        math.pi
        - lens_area(dist(o, q))
        - lens_area(dist(o, u))
        + triple_disk_intersection_area(o, q, u)
    )
    return min(max(val, 0.0), math.pi)


def omitted_area_at_angle(center, delta: float, phi2: float) -> float:
    """Omitted area for two disk centers sitting on the radius-``delta``
    circle about ``center``, one at polar angle pi and one at ``phi2``.

    The uncovered area shrinks as the angle between the two centers
    grows, i.e. it is non-decreasing in ``phi2`` on [0, pi].
    """
    _require_finite(center)
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    if not (0.0 <= phi2 <= math.pi):
        raise ValueError(f"phi2 must lie in [0, pi], got {phi2!r}")
    o1 = Point2D(center[0] - delta, center[1])
    o2 = Point2D(
        center[0] + delta * math.cos(phi2),
        center[1] + delta * math.sin(phi2),
    )
    return omitted_area(center, o1, o2)


def omitted_area_on_circle(frame: SectorFrame, phi2: float) -> float:
    """`omitted_area_at_angle` with the radius taken from a sector frame."""
    return omitted_area_at_angle(frame.center, frame.delta, phi2)


def on_circle_pair_lens(delta: float, phi2: float) -> float:
    """Closed form 2y - sin(2y), cos y = delta*cos(phi2/2), for the
    intersection area of the two unit disks placed as in
    `omitted_area_at_angle`.

    Valid as the full pairwise lens whenever that lens lies inside the
    central unit disk (small ``phi2``); at phi2 = 0 it equals
    ``lens_area(2*delta)`` and at phi2 = pi (coincident centers) it
    equals pi.  Kept as an independent code path for identity checks.
    """
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    if not (0.0 <= phi2 <= math.pi):
        raise ValueError(f"phi2 must lie in [0, pi], got {phi2!r}")
    y = math.acos(delta * math.cos(0.5 * phi2))
    return 2.0 * y - math.sin(2.0 * y)


def _cap_area(t: float) -> float:
    """Area of the unit disk where one coordinate is >= t."""
    if t <= -1.0:
        return math.pi
    if t >= 1.0:
        return 0.0
    return math.acos(t) - t * math.sqrt(1.0 - t * t)


def _quadrant_area(x: float, y: float) -> float:
    """Area of the unit disk (about the origin) with X >= x and Y >= y."""
    if x >= 1.0 or y >= 1.0:
        return 0.0
    if x <= -1.0:
        return _cap_area(y)
    if y <= -1.0:
        return _cap_area(x)
    if x * x + y * y <= 1.0:
        # corner inside: right triangle-ish region plus one circular segment
        ux = math.sqrt(1.0 - y * y)
        uy = math.sqrt(1.0 - x * x)
        theta = math.atan2(uy, x) - math.atan2(y, ux)
        return 0.5 * (uy - y) * (ux - x) + 0.5 * (theta - math.sin(theta))
    if x >= 0.0 and y >= 0.0:
        return 0.0
    if x < 0.0 and y < 0.0:
        return _cap_area(x) + _cap_area(y) - math.pi
    return _cap_area(x) if x >= 0.0 else _cap_area(y)


def _disk_rect_area(center, x0, y0, x1, y1) -> float:
    a, b = x0 - center[0], x1 - center[0]
    c, d = y0 - center[1], y1 - center[1]
    return (
        _quadrant_area(a, c)
        - _quadrant_area(b, c)
        - _quadrant_area(a, d)
        + _quadrant_area(b, d)
    )


def truncated_disk_area(o, square: SquareRegion) -> float:
    """Exact area of the unit disk about ``o`` clipped to the square.

    ``o`` must lie inside the square.  For sides >= 2 the result lies in
    [pi/4, pi], the quarter-disk minimum occurring at a corner.
    """
    _require_finite(o)
    if not square.contains(o):
        raise ValueError(f"center {tuple(o)!r} outside square of side {square.side}")
    return _disk_rect_area(o, 0.0, 0.0, square.side, square.side)


def disk_membership(center, radius: float = 1.0) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Vectorized membership predicate for a closed disk."""
    cx, cy, r2 = center[0], center[1], radius * radius

    def inside(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return (xs - cx) ** 2 + (ys - cy) ** 2 <= r2

    return inside


def mc_area_oracle(
    membership: Callable[[np.ndarray, np.ndarray], np.ndarray],
    bounds: tuple[float, float, float, float],
    samples: int,
    seed: int,
) -> AreaEstimate:
    """Hit-or-miss Monte Carlo area estimate inside an axis-aligned box.

    Parameters
    ----------
    membership : vectorized predicate mapping coordinate arrays (xs, ys)
        to a boolean array.
    bounds : (xlo, xhi, ylo, yhi) sampling box.
    samples : number of uniform points to draw (>= 1).
    seed : RNG seed; the estimate is deterministic given the seed.

    Returns the unbiased estimate with its binomial standard error.
    """
    xlo, xhi, ylo, yhi = bounds
    if not (xhi > xlo and yhi > ylo):
        raise ValueError(f"empty sampling bounds {bounds!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    box = (xhi - xlo) * (yhi - ylo)
    hits = 0
    remaining = samples
    while remaining > 0:
        k = min(remaining, _MC_CHUNK)
        xs = rng.random(k) * (xhi - xlo) + xlo
        ys = rng.random(k) * (yhi - ylo) + ylo
        hits += int(np.count_nonzero(membership(xs, ys)))
        remaining -= k
    p = hits / samples
    return AreaEstimate(
        value=p * box,
        std_error=box * math.sqrt(p * (1.0 - p) / samples),
        samples=samples,
    )


def _disk_square_bounds(o, square: SquareRegion) -> tuple[float, float, float, float]:
    return (
        max(0.0, o[0] - 1.0),
        min(square.side, o[0] + 1.0),
        max(0.0, o[1] - 1.0),
        min(square.side, o[1] + 1.0),
    )


def truncated_omitted_area(
    o,
    q,
    u,
    square: SquareRegion,
    samples: int = 200_000,
    seed: int = 0,
) -> AreaEstimate:
    """Monte Carlo area of the part of the clipped disk about ``o`` covered
    by neither the disk about ``q`` nor the one about ``u``.

    The exact region has many arc/edge cases near the square boundary, so
    this is estimated by hit-or-miss sampling; the standard error is
    surfaced so callers can demand more samples when they need precision.
    Always at most ``omitted_area(o, q, u)`` up to sampling noise, since
    clipping only removes area.
    """
    _require_finite(o, q, u)
    if not square.contains(o):
        raise ValueError(f"center {tuple(o)!r} outside square of side {square.side}")
    in_o = disk_membership(o)
    in_q = disk_membership(q)
    in_u = disk_membership(u)

    def member(xs, ys):
        return in_o(xs, ys) & ~in_q(xs, ys) & ~in_u(xs, ys)

    return mc_area_oracle(member, _disk_square_bounds(o, square), samples, seed)


def sector_of(frame: SectorFrame, p) -> Optional[tuple[str, int]]:
    """Classify ``p`` into a sector of ``frame``.

    Returns ("Q", i) or ("R", i) for points inside the small disk, or
    None for points beyond radius ``delta``.  The center itself has no
    sector and raises.  Angles exactly on a shared sector edge resolve to
    the lower index, and the edge shared by the two families resolves to
    the Q family.
    """
    _require_finite(p)
    dx, dy = p[0] - frame.center[0], p[1] - frame.center[1]
    r2 = dx * dx + dy * dy
    if r2 == 0.0:
        raise ValueError("the frame center has no sector")
    if r2 > frame.delta * frame.delta:
        return None
    theta = math.atan2(dy, dx)  # (-pi, pi]
    family_q = _sector_index(theta, frame)
    if family_q is not None:
        return ("Q", family_q)
    reflected = theta - math.pi if theta > 0.0 else theta + math.pi
    idx = _sector_index(reflected, frame)
    if idx is None:  # numerical edge between families: snap to nearest
        idx = min(frame.count - 1, max(0, int(round(reflected / frame.theta))))
    return ("R", idx)


def _sector_index(theta: float, frame: SectorFrame) -> Optional[int]:
    """Index i with (i - 1/2)*theta_b <= theta <= (i + 1/2)*theta_b, or None."""
    t = theta / frame.theta
    if t < -0.5 or t > frame.count - 0.5:
        return None
    i = math.floor(t + 0.5)
    if t == i - 0.5 and i > 0:
        i -= 1  # boundary ties go to the lower index
    return min(int(i), frame.count - 1)


def extreme_points(frame: SectorFrame, i: int) -> tuple[Point2D, Point2D]:
    """The opposed corner pair of sector pair ``i``: the point of (Q, i) at
    polar (delta, (i - 1/2)*theta) and the point of (R, i) at polar
    (delta, (i + 1/2)*theta + pi).

    Among all point pairs drawn from (Q, i) x (R, i) this pair maximizes
    the omitted area, which is why it drives the worst-case bounds.
    """
    if not (0 <= i < frame.count):
        raise ValueError(f"sector index {i} out of range [0, {frame.count})")
    a1 = (i - 0.5) * frame.theta
    a2 = (i + 0.5) * frame.theta + math.pi
    cx, cy, d = frame.center[0], frame.center[1], frame.delta
    return (
        Point2D(cx + d * math.cos(a1), cy + d * math.sin(a1)),
        Point2D(cx + d * math.cos(a2), cy + d * math.sin(a2)),
    )
