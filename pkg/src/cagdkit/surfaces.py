"""Tensor-product rational surfaces: evaluation, normals, revolution, isolines.

The control net is indexed ``net[i][j]`` with i along u and j along v.
Evaluation collapses one parameter direction with the curve machinery and
then the other, in homogeneous coordinates throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import (
    CIRCLE_KNOTS,
    ControlPoint,
    KnotVector,
    Point,
    RationalCurve,
    _basis_derivatives,
    _bezier_knots,
    _deboor,
    _decasteljau,
    _find_span,
)
from .errors import DomainError, FormError, SingularityError

__all__ = [
    "RationalSurface",
    "Isoline",
    "SurfaceMesh",
    "eval_surface",
    "surface_normal",
    "revolve",
    "isolines",
    "sample_mesh",
]


@dataclass(frozen=True)
class RationalSurface:
    """A NURBS surface over a rectangular weighted control net."""

    net: tuple[tuple[ControlPoint, ...], ...]
    knots_u: KnotVector
    knots_v: KnotVector
    degree_u: int
    degree_v: int

    def __post_init__(self):
        object.__setattr__(self, "net", tuple(tuple(row) for row in self.net))
        if not self.net or not self.net[0]:
            raise DomainError("control net must be non-empty")
        cols = len(self.net[0])
        if any(len(row) != cols for row in self.net):
            raise DomainError("control net must be rectangular")
        if self.degree_u != self.knots_u.degree or self.degree_v != self.knots_v.degree:
            raise DomainError("surface degrees must match their knot vectors")
        if self.knots_u.control_count != len(self.net):
            raise DomainError("u knot vector does not match net row count")
        if self.knots_v.control_count != cols:
            raise DomainError("v knot vector does not match net column count")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.net), len(self.net[0])

    @property
    def domain_u(self) -> tuple[float, float]:
        return self.knots_u.domain

    @property
    def domain_v(self) -> tuple[float, float]:
        return self.knots_v.domain

    @property
    def is_bezier_patch(self) -> bool:
        nu, nv = self.shape
        return (
            nu == self.degree_u + 1
            and nv == self.degree_v + 1
            and self.knots_u.knots == _bezier_knots(self.degree_u).knots
            and self.knots_v.knots == _bezier_knots(self.degree_v).knots
        )

    def homogeneous(self) -> np.ndarray:
        return np.array([[cp.homogeneous() for cp in row] for row in self.net])


@dataclass(frozen=True)
class Isoline:
    """A surface curve at one fixed parameter; direction names the fixed one."""

    direction: str  # "u" or "v"
    value: float
    curve: RationalCurve


@dataclass(frozen=True)
class SurfaceMesh:
    """Sampled parameter grid; degenerate lists (i, j) where no normal exists."""

    us: tuple[float, ...]
    vs: tuple[float, ...]
    points: np.ndarray  # (nu, nv, 3)
    normals: np.ndarray | None  # (nu, nv, 3), zero rows where degenerate
    degenerate: tuple[tuple[int, int], ...] = ()


def _check_surface_domain(s: RationalSurface, u: float, v: float):
    (ulo, uhi), (vlo, vhi) = s.domain_u, s.domain_v
    if not (ulo <= u <= uhi):
        raise DomainError(f"parameter u={u} outside [{ulo}, {uhi}]")
    if not (vlo <= v <= vhi):
        raise DomainError(f"parameter v={v} outside [{vlo}, {vhi}]")


def _collapse_v(hom: np.ndarray, s: RationalSurface, v: float) -> np.ndarray:
    """Fix v: de Boor across each net row, leaving a homogeneous u-polygon."""
    return np.array([_deboor(row, s.knots_v.knots, s.degree_v, v) for row in hom])


def _collapse_u(hom: np.ndarray, s: RationalSurface, u: float) -> np.ndarray:
    return np.array(
        [_deboor(hom[:, j], s.knots_u.knots, s.degree_u, u) for j in range(hom.shape[1])]
    )


def _eval_hom(s: RationalSurface, u: float, v: float, v_first: bool = True) -> np.ndarray:
    hom = s.homogeneous()
    if v_first:
        return _deboor(_collapse_v(hom, s, v), s.knots_u.knots, s.degree_u, u)
    return _deboor(_collapse_u(hom, s, u), s.knots_v.knots, s.degree_v, v)


def eval_surface(s: RationalSurface, u: float, v: float) -> Point:
    """Evaluate the surface at (u, v); corners interpolate corner controls."""
    _check_surface_domain(s, u, v)
    h = _eval_hom(s, u, v)
    return Point(h[0] / h[3], h[1] / h[3], h[2] / h[3])


def _directional_hom_derivs(
    cps: np.ndarray, kv: KnotVector, t: float, order: int
) -> list[np.ndarray]:
    span = _find_span(kv.knots, kv.degree, len(cps), t)
    ders = _basis_derivatives(kv.knots, kv.degree, span, t, order)
    local = cps[span - kv.degree : span + 1]
    return [np.asarray(ders[k]) @ local for k in range(order + 1)]


def surface_derivatives(s: RationalSurface, u: float, v: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Position and first partial derivative vectors (S, dS/du, dS/dv)."""
    _check_surface_domain(s, u, v)
    hom = s.homogeneous()
    a_u = _directional_hom_derivs(_collapse_v(hom, s, v), s.knots_u, u, 1)
    a_v = _directional_hom_derivs(_collapse_u(hom, s, u), s.knots_v, v, 1)
    a, w = a_u[0][:3], a_u[0][3]
    pos = a / w
    du = (a_u[1][:3] - a_u[1][3] * pos) / w
    dv = (a_v[1][:3] - a_v[1][3] * pos) / w
    return pos, du, dv


def surface_normal(s: RationalSurface, u: float, v: float) -> np.ndarray:
    """Unit normal dS/du x dS/dv; degenerate points raise SingularityError."""
    _, du, dv = surface_derivatives(s, u, v)
    n = np.cross(du, dv)
    norm = float(np.linalg.norm(n))
    if norm < 1e-12:
        raise SingularityError(f"degenerate surface normal at (u={u}, v={v})")
    return n / norm


# 9-point quadratic circle structure shared with the curve construction.
_REV_PATTERN = (
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
_REV_WEIGHTS = tuple(1.0 if j % 2 == 0 else math.sqrt(2.0) / 2.0 for j in range(9))


def revolve(profile: RationalCurve) -> RationalSurface:
    """Exact full surface of revolution of an xz-plane profile about the z axis.

    u follows the profile, v the angle (nine-column quadratic circle
    structure with double interior knots).  Row (i, j) carries weight
    w_profile(i) * w_circle(j); the distance of any surface point from the
    axis equals the profile x at the same u, exactly.  The v = 0 and v = 1
    seam columns are duplicates, asserted equal rather than welded.
    """
    for idx, cp in enumerate(profile.control):
        if cp.position.y != 0.0:
            raise DomainError(f"profile control point {idx} must have y = 0 (xz-plane)")
        if cp.position.x < 0.0:
            raise DomainError(
                f"profile control point {idx} has x < 0; revolution would self-intersect"
            )
    net = tuple(
        tuple(
            ControlPoint(
                Point(cp.position.x * px, cp.position.x * py, cp.position.z),
                cp.weight * w,
            )
            for (px, py), w in zip(_REV_PATTERN, _REV_WEIGHTS)
        )
        for cp in profile.control
    )
    return RationalSurface(net, profile.knots, KnotVector(CIRCLE_KNOTS, 2), profile.degree, 2)


def isolines(s: RationalSurface, direction: str, values) -> list[Isoline]:
    """Extract Bezier isolines by collapsing the fixed direction via de Casteljau.

    ``direction`` names the fixed parameter ("u" or "v"); each value must
    lie in [0, 1].  Restricted to Bezier patches; sample general surfaces
    with sample_mesh instead.
    """
    if direction not in ("u", "v"):
        raise DomainError(f'isoline direction must be "u" or "v", got {direction!r}')
    if not s.is_bezier_patch:
        raise FormError("isoline extraction requires a Bezier patch")
    for value in values:
        if not (0.0 <= value <= 1.0):
            raise DomainError(f"isoline value {value} outside [0, 1]")
    hom = s.homogeneous()
    out = []
    for value in values:
        if direction == "v":
            cps = np.array([_decasteljau(row, value) for row in hom])
            kv = _bezier_knots(s.degree_u)
        else:
            cps = np.array([_decasteljau(hom[:, j], value) for j in range(hom.shape[1])])
            kv = _bezier_knots(s.degree_v)
        control = tuple(
            ControlPoint(Point(h[0] / h[3], h[1] / h[3], h[2] / h[3]), h[3]) for h in cps
        )
        out.append(Isoline(direction, float(value), RationalCurve(control, kv, kv.degree)))
    return out


def sample_mesh(s: RationalSurface, nu: int, nv: int, with_normals: bool = False) -> SurfaceMesh:
    """Uniform parameter grid of surface points, boundaries included.

    Degenerate normals are flagged and zeroed, never fatal.
    """
    if nu < 2 or nv < 2:
        raise DomainError(f"mesh sampling needs nu, nv >= 2, got ({nu}, {nv})")
    us = np.linspace(*s.domain_u, nu)
    vs = np.linspace(*s.domain_v, nv)
    points = np.empty((nu, nv, 3))
    normals = np.zeros((nu, nv, 3)) if with_normals else None
    degenerate: list[tuple[int, int]] = []
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            p = eval_surface(s, float(u), float(v))
            points[i, j] = (p.x, p.y, p.z)
            if with_normals:
                try:
                    normals[i, j] = surface_normal(s, float(u), float(v))
                except SingularityError:
                    degenerate.append((i, j))
    return SurfaceMesh(
        tuple(map(float, us)), tuple(map(float, vs)), points, normals, tuple(degenerate)
    )
