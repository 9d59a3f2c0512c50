"""Differential-geometry interrogation of curves.

Signed curvature, porcupine (curvature) combs, spiral verification,
osculating end circles, geometric continuity classification and a
bending-energy fairness metric.  Planar curves (all control z = 0) get
signed curvature with the counterclockwise-positive convention; space
curves get unsigned curvature and the principal normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .curves import Point, RationalCurve, bezier_derivatives, eval_bezier, eval_nurbs, nurbs_derivatives
from .errors import DomainError, InfiniteRadiusError, SingularityError

__all__ = [
    "CurvatureSample",
    "CurvatureComb",
    "SpiralReport",
    "GLevel",
    "ContinuityReport",
    "Circle",
    "curvature",
    "curvature_comb",
    "check_spiral",
    "check_continuity",
    "end_curvature_circle",
    "bending_energy",
]

# First-derivative magnitudes below this are treated as singular (model units).
SINGULAR_SPEED = 1e-12


@dataclass(frozen=True)
class CurvatureSample:
    """Point, unit tangent, unit left normal and signed curvature at t."""

    t: float
    point: Point
    tangent: np.ndarray
    normal: np.ndarray
    kappa: float


@dataclass(frozen=True)
class CurvatureComb:
    """Porcupine plot: tips sit at point + scale * kappa * normal."""

    samples: tuple[CurvatureSample, ...]
    scale: float
    tips: tuple[Point, ...]


@dataclass(frozen=True)
class SpiralReport:
    """Verdict of the sampled spiral (monotone single-signed curvature) check."""

    monotone: bool
    kappa_start: float
    kappa_end: float
    max_violation: float
    inflection_count: int


class GLevel(IntEnum):
    NONE = 0
    G0 = 1
    G1 = 2
    G2 = 3

    def __str__(self) -> str:  # serialized form
        return self.name


@dataclass(frozen=True)
class ContinuityReport:
    """Geometric continuity of a curve joint with the measured defects."""

    level: GLevel
    position_gap: float
    tangent_angle_gap: float
    curvature_gap: float


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"circle radius must be positive, got {self.radius}")


def _eval(curve: RationalCurve, t: float) -> Point:
    return eval_bezier(curve, t) if curve.is_bezier else eval_nurbs(curve, t)


def _derivs(curve: RationalCurve, t: float, order: int) -> list[np.ndarray]:
    if curve.is_bezier:
        return bezier_derivatives(curve, t, order)
    return nurbs_derivatives(curve, t, order)


def curvature(curve: RationalCurve, t: float) -> CurvatureSample:
    """Curvature sample at t.

    Planar case: kappa = (x'y'' - y'x'') / |C'|^3, positive when the curve
    turns counterclockwise, and the normal is the tangent rotated +90 deg.
    Space case: kappa = |C' x C''| / |C'|^3 (unsigned) with the principal
    normal; a straight region gets kappa 0 and a zero normal.
    """
    d1, d2 = _derivs(curve, t, 2)
    speed = float(np.linalg.norm(d1))
    if speed <= SINGULAR_SPEED:
        raise SingularityError(f"vanishing first derivative at parameter t={t}")
    tangent = d1 / speed
    point = _eval(curve, t)
    if curve.is_planar:
        kappa = (d1[0] * d2[1] - d1[1] * d2[0]) / speed**3
        normal = np.array([-tangent[1], tangent[0], 0.0])
    else:
        cr = np.cross(d1, d2)
        kappa = float(np.linalg.norm(cr)) / speed**3
        if kappa <= SINGULAR_SPEED:
            kappa = 0.0
            normal = np.zeros(3)
        else:
            normal = np.cross(cr, d1)
            normal = normal / np.linalg.norm(normal)
    return CurvatureSample(t, point, tangent, normal, float(kappa))


def _uniform_params(curve: RationalCurve, n: int) -> np.ndarray:
    lo, hi = curve.domain
    return np.linspace(lo, hi, n)


def _auto_comb_scale(curve: RationalCurve, samples: list[CurvatureSample]) -> float:
    """Scale so the longest quill spans 10% of the control bounding-box diagonal."""
    pos = curve.positions()
    diag = float(np.linalg.norm(pos.max(axis=0) - pos.min(axis=0)))
    kmax = max(abs(s.kappa) for s in samples)
    if diag == 0.0 or kmax == 0.0:
        return 1.0
    return 0.1 * diag / kmax


def curvature_comb(curve: RationalCurve, n: int = 64, scale: float | None = None) -> CurvatureComb:
    """n uniformly spaced curvature samples with their comb tips.

    The comb flips sides at inflections (tips at point + scale*kappa*normal).
    ``scale=None`` auto-fits the longest quill to 10% of the bounding box.
    """
    if n < 2:
        raise DomainError(f"comb needs at least 2 samples, got {n}")
    if scale is not None and not scale > 0.0:
        raise DomainError(f"comb scale must be positive, got {scale}")
    samples = []
    for i, t in enumerate(_uniform_params(curve, n)):
        try:
            samples.append(curvature(curve, float(t)))
        except SingularityError as exc:
            raise SingularityError(f"sample {i}: {exc}") from exc
    if scale is None:
        scale = _auto_comb_scale(curve, samples)
    tips = tuple(
        Point.from_array(s.point.as_array() + scale * s.kappa * s.normal) for s in samples
    )
    return CurvatureComb(tuple(samples), scale, tips)


def check_spiral(curve: RationalCurve, n: int = 1000, tol: float = 1e-9) -> SpiralReport:
    """Sampled spiral check: |kappa| non-decreasing and single-signed.

    Monotonicity is non-strict (a circular arc passes); any sign change of
    kappa beyond tol fails the check regardless of step sizes.  The verdict
    is at resolution n, not a symbolic proof.
    """
    if n < 16:
        raise DomainError(f"spiral check needs at least 16 samples, got {n}")
    kappas = []
    for i, t in enumerate(_uniform_params(curve, n)):
        try:
            kappas.append(curvature(curve, float(t)).kappa)
        except SingularityError as exc:
            raise SingularityError(f"sample {i}: {exc}") from exc
    k = np.asarray(kappas)
    steps = np.abs(k[:-1]) - np.abs(k[1:])
    max_violation = float(max(0.0, steps.max(initial=0.0)))
    signs = np.sign(k[np.abs(k) > tol])
    inflections = int(np.count_nonzero(np.diff(signs) != 0))
    monotone = max_violation <= tol and inflections == 0
    return SpiralReport(monotone, float(k[0]), float(k[-1]), max_violation, inflections)


def _angle_between(u: np.ndarray, v: np.ndarray) -> float:
    cr = np.linalg.norm(np.cross(u, v))
    return math.atan2(float(cr), float(np.dot(u, v)))


def check_continuity(
    a: RationalCurve,
    b: RationalCurve,
    tol_position: float = 1e-9,
    tol_angle: float = 1e-9,
    tol_curvature: float = 1e-6,
) -> ContinuityReport:
    """Classify the joint end-of-a / start-of-b as NONE, G0, G1 or G2.

    Geometric continuity: unit tangents and (signed, when planar) curvatures
    are compared, never raw parametric derivatives, so reparameterized
    halves of one curve classify as G2.  The curvature tolerance is relative
    to max(1, |kappa|).
    """
    sa = curvature(a, a.domain[1])
    sb = curvature(b, b.domain[0])
    position_gap = float(np.linalg.norm(sa.point.as_array() - sb.point.as_array()))
    tangent_gap = _angle_between(sa.tangent, sb.tangent)
    if a.is_planar and b.is_planar:
        curvature_gap = abs(sa.kappa - sb.kappa)
    else:
        curvature_gap = abs(abs(sa.kappa) - abs(sb.kappa))
    level = GLevel.NONE
    if position_gap <= tol_position:
        level = GLevel.G0
        if tangent_gap <= tol_angle:
            level = GLevel.G1
            if curvature_gap <= tol_curvature * max(1.0, abs(sa.kappa), abs(sb.kappa)):
                level = GLevel.G2
    return ContinuityReport(level, position_gap, tangent_gap, curvature_gap)


def end_curvature_circle(curve: RationalCurve, end: str = "end") -> Circle:
    """Osculating circle at an endpoint: the paper-style end-curvature circle.

    ``end`` is "start" or "end"; curvature must be nonzero there.
    """
    if end not in ("start", "end"):
        raise DomainError(f'end must be "start" or "end", got {end!r}')
    t = curve.domain[0] if end == "start" else curve.domain[1]
    s = curvature(curve, t)
    if abs(s.kappa) < 1e-12:
        raise InfiniteRadiusError(f"curvature at {end} is zero; osculating radius is infinite")
    center = s.point.as_array() + s.normal / s.kappa
    return Circle(Point.from_array(center), 1.0 / abs(s.kappa))


def bending_energy(curve: RationalCurve, n: int = 256) -> float:
    """Approximate the fairness energy integral of kappa^2 ds.

    Composite trapezoid over n uniform parameter samples with ds = |C'| dt.
    """
    if n < 32:
        raise DomainError(f"energy quadrature needs at least 32 samples, got {n}")
    ts = _uniform_params(curve, n)
    f = np.empty(n)
    for i, t in enumerate(ts):
        try:
            s = curvature(curve, float(t))
        except SingularityError as exc:
            raise SingularityError(f"sample {i}: {exc}") from exc
        speed = float(np.linalg.norm(_derivs(curve, float(t), 1)[0]))
        f[i] = s.kappa * s.kappa * speed
    dt = ts[1] - ts[0]
    return float(np.sum((f[1:] + f[:-1]) * 0.5 * dt))
