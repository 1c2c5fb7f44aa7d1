"""Planar circle primitives: circumcircles, least-squares fits, arc
division, and circle intersections.

Everything here is instrument-agnostic plane geometry.  Angles are in
radians, measured counterclockwise from +x in the usual mathematical
sense; modules with an astronomical surface convert degrees at their own
boundary.  Lengths are millimeters throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import CoincidentCircles, CollinearPoints, TooFewPoints

TAU = 2.0 * math.pi

# circumcircle rejects inputs when |signed area| < this times (max pairwise distance)^2
COLLINEAR_AREA_REL = 1e-12

# coincidence / tangency window for circle-circle intersection, relative to scale
COINCIDENT_REL = 1e-9


def normalize_angle(theta: float) -> float:
    """Map an angle in radians into [0, 2*pi)."""
    r = math.fmod(theta, TAU)
    if r < 0.0:
        r += TAU
    if r >= TAU:
        r = 0.0
    return r


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate: {v!r}")


@dataclass(frozen=True)
class PlanePoint:
    """A point on the projection plane, coordinates in millimeters."""

    x: float
    y: float

    def __post_init__(self):
        _require_finite(self.x, self.y)

    def distance_to(self, other: "PlanePoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Segment:
    """A straight segment between two plane points."""

    a: PlanePoint
    b: PlanePoint

    def length(self) -> float:
        return self.a.distance_to(self.b)


@dataclass(frozen=True)
class Circle:
    center: PlanePoint
    radius: float

    def __post_init__(self):
        _require_finite(self.radius)
        if self.radius <= 0.0:
            raise ValueError(f"circle radius must be positive, got {self.radius!r}")

    def point_at(self, theta: float) -> PlanePoint:
        """Point on the circle at polar angle theta (rad, ccw from +x)."""
        return PlanePoint(
            self.center.x + self.radius * math.cos(theta),
            self.center.y + self.radius * math.sin(theta),
        )

    def angle_of(self, p: PlanePoint) -> float:
        """Polar angle of p as seen from the center, in [0, 2*pi)."""
        return normalize_angle(math.atan2(p.y - self.center.y, p.x - self.center.x))

    def signed_distance(self, p: PlanePoint) -> float:
        """Distance from the rim: negative inside the disc, positive outside."""
        return self.center.distance_to(p) - self.radius


@dataclass(frozen=True)
class Arc:
    """A circular arc from start_angle to end_angle along the stated
    orientation ("ccw" or "cw").  Angles are stored normalized to
    [0, 2*pi); a zero sweep is rejected, a full circle is not an Arc.
    """

    circle: Circle
    start_angle: float
    end_angle: float
    orientation: str = "ccw"

    def __post_init__(self):
        if self.orientation not in ("ccw", "cw"):
            raise ValueError(f"orientation must be 'ccw' or 'cw', got {self.orientation!r}")
        _require_finite(self.start_angle, self.end_angle)
        object.__setattr__(self, "start_angle", normalize_angle(self.start_angle))
        object.__setattr__(self, "end_angle", normalize_angle(self.end_angle))
        if math.isclose(self.start_angle, self.end_angle, abs_tol=1e-15):
            raise ValueError("arc has zero sweep; use Circle for a full circle")

    @property
    def sweep(self) -> float:
        """Signed angular extent in radians: positive for ccw, negative for cw."""
        if self.orientation == "ccw":
            return (self.end_angle - self.start_angle) % TAU
        return -((self.start_angle - self.end_angle) % TAU)

    def point_at_fraction(self, t: float) -> PlanePoint:
        """Point at parameter t in [0, 1] along the arc."""
        return self.circle.point_at(self.start_angle + t * self.sweep)

    @property
    def start_point(self) -> PlanePoint:
        return self.circle.point_at(self.start_angle)

    @property
    def end_point(self) -> PlanePoint:
        return self.circle.point_at(self.end_angle)

    def contains_angle(self, theta: float) -> bool:
        """True if polar angle theta lies on the arc (inclusive ends,
        with wrap-safe slack so endpoint queries survive 1-ulp wobble)."""
        if self.orientation == "ccw":
            offset = (theta - self.start_angle) % TAU
            extent = self.sweep
        else:
            offset = (self.start_angle - theta) % TAU
            extent = -self.sweep
        return offset <= extent + 1e-12 or offset >= TAU - 1e-12


@dataclass(frozen=True)
class FitResult:
    """A fitted circle with its radial residual summary."""

    circle: Circle
    rms_residual: float
    max_residual: float


def circumcircle(p1: PlanePoint, p2: PlanePoint, p3: PlanePoint) -> Circle:
    """Circle through three pairwise-distinct points.

    Raises CollinearPoints when the signed triangle area is below
    COLLINEAR_AREA_REL times the squared max pairwise distance.
    Coordinates are shifted to p1 before solving, which keeps the
    arithmetic well conditioned for circles far from the origin.
    """
    bx, by = p2.x - p1.x, p2.y - p1.y
    cx, cy = p3.x - p1.x, p3.y - p1.y
    dmax = max(math.hypot(bx, by), math.hypot(cx, cy), math.hypot(cx - bx, cy - by))
    if dmax == 0.0:
        raise ValueError("circumcircle requires pairwise distinct points")
    area2 = bx * cy - by * cx
    if abs(area2) / 2.0 < COLLINEAR_AREA_REL * dmax * dmax:
        raise CollinearPoints(
            f"points are collinear within tolerance (|area| = {abs(area2) / 2.0:.3e})"
        )
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    d = 2.0 * area2
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = PlanePoint(p1.x + ux, p1.y + uy)
    return Circle(center, math.hypot(ux, uy))


def fit_circle(points: Sequence[PlanePoint]) -> FitResult:
    """Least-squares circle through >= 3 points.

    Algebraic (Kasa) solve for the initial estimate, then one
    Gauss-Newton step on the geometric radial residuals.  Raises
    TooFewPoints for n < 3 and CollinearPoints when the points carry no
    curvature to fit.
    """
    if len(points) < 3:
        raise TooFewPoints(f"circle fit needs at least 3 points, got {len(points)}")
    xs = np.array([p.x for p in points], dtype=float)
    ys = np.array([p.y for p in points], dtype=float)

    diag = math.hypot(float(xs.max() - xs.min()), float(ys.max() - ys.min()))
    if diag == 0.0:
        raise CollinearPoints("all points coincide")
    # collinearity screen: smallest singular value of the centered cloud
    centered = np.column_stack((xs - xs.mean(), ys - ys.mean()))
    smin = float(np.linalg.svd(centered, compute_uv=False)[-1])
    if smin / math.sqrt(len(points)) < 1e-12 * diag:
        raise CollinearPoints("points are collinear within tolerance")

    a = np.column_stack((xs, ys, np.ones_like(xs)))
    rhs = -(xs * xs + ys * ys)
    (dd, ee, ff), *_ = np.linalg.lstsq(a, rhs, rcond=None)
    cx, cy = -dd / 2.0, -ee / 2.0
    r2 = cx * cx + cy * cy - ff
    if not (r2 > 0.0 and math.isfinite(r2)):
        raise CollinearPoints("degenerate algebraic fit")
    r = math.sqrt(r2)

    # one Gauss-Newton step on f_i = |p_i - c| - r
    dx, dy = xs - cx, ys - cy
    dist = np.hypot(dx, dy)
    if float(dist.min()) > 1e-12 * diag:
        jac = np.column_stack((-dx / dist, -dy / dist, -np.ones_like(dist)))
        step, *_ = np.linalg.lstsq(jac, -(dist - r), rcond=None)
        if np.all(np.isfinite(step)) and r + step[2] > 0.0:
            cx += float(step[0])
            cy += float(step[1])
            r += float(step[2])

    res = np.abs(np.hypot(xs - cx, ys - cy) - r)
    return FitResult(
        circle=Circle(PlanePoint(cx, cy), r),
        rms_residual=float(np.sqrt(np.mean(res * res))),
        max_residual=float(res.max()),
    )


def divide_arc_equal(arc: Arc, n: int) -> list[PlanePoint]:
    """n+1 points dividing the arc into n equal angular parts, endpoints
    included, ordered from the arc's start to its end."""
    if n < 1:
        raise ValueError(f"division count must be >= 1, got {n}")
    sweep = arc.sweep
    return [arc.circle.point_at(arc.start_angle + sweep * k / n) for k in range(n + 1)]


def circle_circle_intersection(a: Circle, b: Circle) -> tuple[PlanePoint, ...]:
    """Intersection points of two circles.

    Returns two points, one point (tangency within tolerance), or an
    empty tuple.  Raises CoincidentCircles when the circles coincide
    within COINCIDENT_REL of their size.  Ordering is deterministic:
    the point on the +90 degree side of the center-to-center axis first.
    """
    dx = b.center.x - a.center.x
    dy = b.center.y - a.center.y
    d = math.hypot(dx, dy)
    scale = max(a.radius, b.radius, d)
    tol = COINCIDENT_REL * scale
    if d <= tol and abs(a.radius - b.radius) <= tol:
        raise CoincidentCircles("circles coincide within tolerance")
    if d - (a.radius + b.radius) > tol or (abs(a.radius - b.radius) - d) > tol:
        return ()
    ex, ey = dx / d, dy / d
    along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    h2 = a.radius * a.radius - along * along
    h = math.sqrt(h2) if h2 > 0.0 else 0.0
    px = a.center.x + along * ex
    py = a.center.y + along * ey
    if h <= tol:
        return (PlanePoint(px, py),)
    return (
        PlanePoint(px - h * ey, py + h * ex),
        PlanePoint(px + h * ey, py - h * ex),
    )


def chord_length(circle: Circle, theta1: float, theta2: float) -> float:
    """Chord between the rim points at polar angles theta1, theta2 (rad)."""
    return 2.0 * circle.radius * abs(math.sin((theta2 - theta1) / 2.0))
