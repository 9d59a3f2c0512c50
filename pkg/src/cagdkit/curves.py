"""Rational Bezier / B-spline / NURBS curves and their evaluators.

Value types are immutable; every operation is a pure function.  All
evaluation runs on homogeneous coordinates ``(w*x, w*y, w*z, w)`` followed
by projection, so polynomial curves (unit weights) and rational curves go
through the same code paths.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FormError

__all__ = [
    "Point",
    "ControlPoint",
    "KnotVector",
    "RationalCurve",
    "SpiralSpec",
    "bezier_curve",
    "eval_bezier",
    "bezier_derivatives",
    "subdivide_bezier",
    "eval_nurbs",
    "nurbs_derivatives",
    "make_circle_nurbs",
    "make_cubic_spiral",
]


@dataclass(frozen=True)
class Point:
    """A location in model space; planar entities use z = 0."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise DomainError(f"point coordinates must be finite, got {self!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @staticmethod
    def from_array(a) -> "Point":
        return Point(float(a[0]), float(a[1]), float(a[2]))


@dataclass(frozen=True)
class ControlPoint:
    """A weighted control point; weight 1 is the polynomial case."""

    position: Point
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        if not (math.isfinite(self.weight) and self.weight > 0.0):
            raise DomainError(f"control-point weight must be positive, got {self.weight}")

    def homogeneous(self) -> np.ndarray:
        w = self.weight
        p = self.position
        return np.array([w * p.x, w * p.y, w * p.z, w], dtype=float)


@dataclass(frozen=True)
class KnotVector:
    """A clamped knot vector for a curve of the given degree.

    Invariants enforced at construction: non-decreasing knots, end knots of
    multiplicity exactly degree+1, interior multiplicity at most degree.
    Unclamped and periodic layouts are rejected.
    """

    knots: tuple[float, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "knots", tuple(float(k) for k in self.knots))
        d = self.degree
        kn = self.knots
        if d < 1:
            raise DomainError(f"degree must be >= 1, got {d}")
        if len(kn) < 2 * (d + 1):
            raise DomainError(f"knot vector needs at least {2 * (d + 1)} knots, got {len(kn)}")
        for k in kn:
            if not math.isfinite(k):
                raise DomainError("knots must be finite")
        for a, b in zip(kn, kn[1:]):
            if b < a:
                raise DomainError("knot vector must be non-decreasing")
        if kn[0] != kn[d] or kn[d] == kn[d + 1]:
            raise DomainError("first knot must have multiplicity exactly degree+1 (clamped)")
        if kn[-1] != kn[-d - 1] or kn[-d - 1] == kn[-d - 2]:
            raise DomainError("last knot must have multiplicity exactly degree+1 (clamped)")
        run = 1
        for a, b in zip(kn[d + 1 : -d - 1], kn[d + 2 : -d]):
            run = run + 1 if b == a else 1
            if run > d:
                raise DomainError("interior knot multiplicity must not exceed the degree")

    @property
    def control_count(self) -> int:
        return len(self.knots) - self.degree - 1

    @property
    def domain(self) -> tuple[float, float]:
        return self.knots[self.degree], self.knots[-self.degree - 1]


def _bezier_knots(degree: int) -> KnotVector:
    return KnotVector((0.0,) * (degree + 1) + (1.0,) * (degree + 1), degree)


@dataclass(frozen=True)
class RationalCurve:
    """A NURBS curve; Bezier and integral B-splines are special cases."""

    control: tuple[ControlPoint, ...]
    knots: KnotVector
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "control", tuple(self.control))
        if self.degree != self.knots.degree:
            raise DomainError("curve degree must match its knot vector degree")
        if len(self.control) < self.degree + 1:
            raise DomainError(
                f"need at least {self.degree + 1} control points for degree {self.degree}"
            )
        if self.knots.control_count != len(self.control):
            raise DomainError(
                f"knot count {len(self.knots.knots)} does not match "
                f"{len(self.control)} control points of degree {self.degree}"
            )

    @property
    def domain(self) -> tuple[float, float]:
        return self.knots.domain

    @property
    def is_bezier(self) -> bool:
        d = self.degree
        return len(self.control) == d + 1 and self.knots.knots == (0.0,) * (d + 1) + (1.0,) * (
            d + 1
        )

    @property
    def is_planar(self) -> bool:
        return all(cp.position.z == 0.0 for cp in self.control)

    def homogeneous(self) -> np.ndarray:
        return np.array([cp.homogeneous() for cp in self.control])

    def positions(self) -> np.ndarray:
        return np.array([cp.position.as_array() for cp in self.control])


def bezier_curve(points, weights=None) -> RationalCurve:
    """Build a Bezier-form RationalCurve from point coordinates.

    ``points`` is a sequence of (x, y) or (x, y, z); degree is inferred.
    """
    pts = [Point(*map(float, p)) for p in points]
    if weights is None:
        weights = [1.0] * len(pts)
    control = tuple(ControlPoint(p, float(w)) for p, w in zip(pts, weights))
    degree = len(control) - 1
    return RationalCurve(control, _bezier_knots(degree), degree)


@dataclass(frozen=True)
class SpiralSpec:
    """Input data for the cubic spiral construction.

    The tangent turns by ``turn_angle`` (radians, in (0, pi/2]) from the
    start, curvature grows monotonically from 0 to ``end_curvature``.
    """

    start: Point
    start_tangent_angle: float
    turn_angle: float
    end_curvature: float

    def __post_init__(self):
        if not (0.0 < self.turn_angle <= math.pi / 2.0):
            raise DomainError(
                f"turn angle must lie in (0, pi/2], got {self.turn_angle}"
            )
        if not (math.isfinite(self.end_curvature) and self.end_curvature > 0.0):
            raise DomainError(f"end curvature must be positive, got {self.end_curvature}")
        if not math.isfinite(self.start_tangent_angle):
            raise DomainError("start tangent angle must be finite")


# ---------------------------------------------------------------------------
# Bezier evaluation (de Casteljau)


def _require_bezier(curve: RationalCurve):
    if not curve.is_bezier:
        raise FormError("operation requires a curve in Bezier form")


def _check_unit_param(t: float):
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"parameter {t} outside [0, 1]")


def _decasteljau(hom: np.ndarray, t: float) -> np.ndarray:
    """One point of the de Casteljau pyramid over homogeneous points."""
    b = hom.copy()
    s = 1.0 - t
    for r in range(1, len(hom)):
        b[: len(hom) - r] = s * b[: len(hom) - r] + t * b[1 : len(hom) - r + 1]
    return b[0]


def _project(h: np.ndarray) -> Point:
    return Point(h[0] / h[3], h[1] / h[3], h[2] / h[3])


def eval_bezier(curve: RationalCurve, t: float) -> Point:
    """Evaluate a Bezier-form curve at t in [0, 1] by de Casteljau."""
    _require_bezier(curve)
    _check_unit_param(t)
    if t == 0.0:
        return curve.control[0].position
    if t == 1.0:
        return curve.control[-1].position
    return _project(_decasteljau(curve.homogeneous(), t))


def _hom_bezier_derivs(hom: np.ndarray, t: float, order: int) -> list[np.ndarray]:
    """Homogeneous value and derivatives [A, A', ...] via hodographs."""
    n = len(hom) - 1
    out = [_decasteljau(hom, t)]
    d = hom
    scale = 1.0
    for k in range(1, order + 1):
        scale *= n - k + 1
        d = np.diff(d, axis=0)
        if len(d) == 0:
            out.append(np.zeros(4))
        else:
            out.append(scale * _decasteljau(d, t))
    return out


def _rational_derivs(hom_derivs: list[np.ndarray]) -> list[np.ndarray]:
    """Project homogeneous derivatives to curve derivatives (quotient rule).

    C' = (A' - w'C)/w and C'' = (A'' - 2w'C' - w''C)/w with A the
    homogeneous numerator and w the weight function.
    """
    a = hom_derivs
    w = a[0][3]
    c = a[0][:3] / w
    out = []
    if len(a) > 1:
        c1 = (a[1][:3] - a[1][3] * c) / w
        out.append(c1)
    if len(a) > 2:
        c2 = (a[2][:3] - 2.0 * a[1][3] * c1 - a[2][3] * c) / w
        out.append(c2)
    return out


def _check_order(order: int):
    if order not in (1, 2):
        raise DomainError(f"unsupported derivative order {order}; only 1 and 2")


def bezier_derivatives(curve: RationalCurve, t: float, order: int = 1) -> list[np.ndarray]:
    """First (and second) derivative vectors of a Bezier-form curve at t."""
    _require_bezier(curve)
    _check_order(order)
    _check_unit_param(t)
    return _rational_derivs(_hom_bezier_derivs(curve.homogeneous(), t, order))


def _curve_from_hom(hom: np.ndarray, knots: KnotVector) -> RationalCurve:
    control = tuple(
        ControlPoint(Point(h[0] / h[3], h[1] / h[3], h[2] / h[3]), h[3]) for h in hom
    )
    return RationalCurve(control, knots, knots.degree)


def subdivide_bezier(curve: RationalCurve, t: float) -> tuple[RationalCurve, RationalCurve]:
    """Split a Bezier curve at t into two Bezier curves of the same degree.

    The full de Casteljau pyramid provides both control polygons; the halves
    reproduce the parent pointwise under reparameterization.
    """
    _require_bezier(curve)
    _check_unit_param(t)
    hom = curve.homogeneous()
    n = len(hom)
    left = [hom[0]]
    right = [hom[-1]]
    b = hom.copy()
    s = 1.0 - t
    for r in range(1, n):
        b[: n - r] = s * b[: n - r] + t * b[1 : n - r + 1]
        left.append(b[0].copy())
        right.append(b[n - r - 1].copy())
    kv = _bezier_knots(curve.degree)
    return _curve_from_hom(np.array(left), kv), _curve_from_hom(np.array(right[::-1]), kv)


# ---------------------------------------------------------------------------
# B-spline / NURBS evaluation (de Boor)


def _find_span(knots: tuple[float, ...], degree: int, count: int, t: float) -> int:
    """Left-continuous knot span: largest k with knots[k] < t, clamped.

    At an interior knot the span to its left is used; domain endpoints map
    to the clamped end spans.
    """
    k = bisect_left(knots, t) - 1
    if k < degree:
        return degree
    if k > count - 1:
        return count - 1
    return k


def _check_domain(curve: RationalCurve, t: float):
    lo, hi = curve.domain
    if not (lo <= t <= hi):
        raise DomainError(f"parameter {t} outside knot domain [{lo}, {hi}]")


def _deboor(hom: np.ndarray, knots: tuple[float, ...], degree: int, t: float) -> np.ndarray:
    k = _find_span(knots, degree, len(hom), t)
    d = [hom[j].copy() for j in range(k - degree, k + 1)]
    for r in range(1, degree + 1):
        for j in range(degree, r - 1, -1):
            i = j + k - degree
            alpha = (t - knots[i]) / (knots[i + degree - r + 1] - knots[i])
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j]
    return d[degree]


def eval_nurbs(curve: RationalCurve, t: float) -> Point:
    """Evaluate any curve at t inside its knot domain by de Boor."""
    _check_domain(curve, t)
    lo, hi = curve.domain
    if t == lo:
        return curve.control[0].position
    if t == hi:
        return curve.control[-1].position
    return _project(_deboor(curve.homogeneous(), curve.knots.knots, curve.degree, t))


def _basis_derivatives(
    knots: tuple[float, ...], degree: int, span: int, t: float, order: int
) -> list[list[float]]:
    """Nonzero basis functions and derivatives at t, orders 0..order.

    Returns ders[k][j] = d^k/dt^k of basis function (span-degree+j) at t.
    Standard triangular-table algorithm; robust at repeated knots.
    """
    ndu = [[0.0] * (degree + 1) for _ in range(degree + 1)]
    ndu[0][0] = 1.0
    left = [0.0] * (degree + 1)
    right = [0.0] * (degree + 1)
    for j in range(1, degree + 1):
        left[j] = t - knots[span + 1 - j]
        right[j] = knots[span + j] - t
        saved = 0.0
        for r in range(j):
            ndu[j][r] = right[r + 1] + left[j - r]
            temp = ndu[r][j - 1] / ndu[j][r]
            ndu[r][j] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        ndu[j][j] = saved

    ders = [[0.0] * (degree + 1) for _ in range(order + 1)]
    for j in range(degree + 1):
        ders[0][j] = ndu[j][degree]

    eff = min(order, degree)
    a = [[0.0] * (degree + 1) for _ in range(2)]
    for r in range(degree + 1):
        s1, s2 = 0, 1
        a[0][0] = 1.0
        for k in range(1, eff + 1):
            d = 0.0
            rk = r - k
            pk = degree - k
            if r >= k:
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk]
                d = a[s2][0] * ndu[rk][pk]
            j1 = 1 if rk >= -1 else -rk
            j2 = k - 1 if r - 1 <= pk else degree - r
            for j in range(j1, j2 + 1):
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j]
                d += a[s2][j] * ndu[rk + j][pk]
            if r <= pk:
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r]
                d += a[s2][k] * ndu[r][pk]
            ders[k][r] = d
            s1, s2 = s2, s1

    f = float(degree)
    for k in range(1, eff + 1):
        for j in range(degree + 1):
            ders[k][j] *= f
        f *= degree - k
    return ders


def _hom_nurbs_derivs(curve: RationalCurve, t: float, order: int) -> list[np.ndarray]:
    hom = curve.homogeneous()
    d = curve.degree
    span = _find_span(curve.knots.knots, d, len(hom), t)
    ders = _basis_derivatives(curve.knots.knots, d, span, t, order)
    local = hom[span - d : span + 1]
    return [np.asarray(ders[k]) @ local for k in range(order + 1)]


def nurbs_derivatives(curve: RationalCurve, t: float, order: int = 1) -> list[np.ndarray]:
    """First (and second) derivative vectors at t for any curve."""
    _check_order(order)
    _check_domain(curve, t)
    return _rational_derivs(_hom_nurbs_derivs(curve, t, order))


# ---------------------------------------------------------------------------
# Named constructions

_CIRCLE_PATTERN = (
    (1.0, 0.0),
    (1.0, 1.0),
    (0.0, 1.0),
    (-1.0, 1.0),
    (-1.0, 0.0),
    (-1.0, -1.0),
    (0.0, -1.0),
    (1.0, -1.0),
    (1.0, 0.0),
)

CIRCLE_KNOTS = (0.0, 0.0, 0.0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1.0, 1.0, 1.0)

_CIRCLE_WEIGHTS = tuple(
    1.0 if i % 2 == 0 else math.sqrt(2.0) / 2.0 for i in range(9)
)


def make_circle_nurbs(center: Point, radius: float) -> RationalCurve:
    """Exact full circle as a clamped quadratic NURBS.

    Nine control points sit on the corners and edge midpoints of the
    circumscribed square, weights alternate 1 and sqrt(2)/2, with double
    interior knots at the quarter parameters.  Every evaluated point lies
    on the circle to round-off; t = 0 starts at center + (radius, 0).
    """
    if not (math.isfinite(radius) and radius > 0.0):
        raise DomainError(f"radius must be positive, got {radius}")
    control = tuple(
        ControlPoint(
            Point(center.x + radius * px, center.y + radius * py, center.z), w
        )
        for (px, py), w in zip(_CIRCLE_PATTERN, _CIRCLE_WEIGHTS)
    )
    return RationalCurve(control, KnotVector(CIRCLE_KNOTS, 2), 2)


def make_cubic_spiral(spec: SpiralSpec) -> RationalCurve:
    """Cubic Bezier spiral: curvature grows monotonically from 0 to its end value.

    Control legs along the start tangent have length a = (25/54) sin(t)/
    (k1 cos^2(t)) each, the end leg c = (5/9) tan(t)/k1 along the turned
    tangent, with t the turn angle and k1 the end curvature.  This choice
    pins the curvature derivative to zero at the far end, which is what
    makes the curvature monotone for turn angles up to pi/2.  The curve
    blows up in size as the turn angle approaches pi/2; that is inherent
    to the construction, not a defect.
    """
    theta = spec.turn_angle
    k1 = spec.end_curvature
    sin_t = math.sin(theta)
    cos_t = math.cos(theta)
    a = (25.0 / 54.0) * sin_t / (cos_t * cos_t * k1)
    c = (5.0 / 9.0) * math.tan(theta) / k1

    local = (
        (0.0, 0.0),
        (a, 0.0),
        (2.0 * a, 0.0),
        (2.0 * a + c * cos_t, c * sin_t),
    )
    ca = math.cos(spec.start_tangent_angle)
    sa = math.sin(spec.start_tangent_angle)
    s = spec.start
    points = [
        (s.x + x * ca - y * sa, s.y + x * sa + y * ca, s.z) for x, y in local
    ]
    return bezier_curve(points)
