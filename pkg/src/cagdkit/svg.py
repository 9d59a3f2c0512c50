"""Deterministic SVG rendering of model documents.

Reproduces the usual CAGD figure vocabulary: sampled curve polylines,
dashed control polygons with point markers, curvature combs and
end-curvature circles.  Output depends only on the document and options,
so identical inputs give byte-identical SVG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import RationalCurve, eval_bezier, eval_nurbs
from .interrogate import SingularityError, curvature_comb, end_curvature_circle
from .model import ModelDocument
from .surfaces import sample_mesh

__all__ = ["SvgOptions", "render_svg"]


@dataclass(frozen=True)
class SvgOptions:
    control_polygons: bool = True
    combs: bool = False
    end_circles: bool = False
    comb_samples: int = 64
    comb_scale: float | None = None
    chord_tolerance: float = 1e-3  # fraction of the view diagonal
    max_points_per_curve: int = 4096
    mesh_density: int = 17
    width: int = 640


def _fmt(x: float) -> str:
    return f"{x:.6g}"


class _Scene:
    """Collects projected elements, then fits the view box with 5% margin."""

    def __init__(self):
        self.layers: dict[str, list[str]] = {
            "curves": [],
            "control-polygons": [],
            "control-points": [],
            "combs": [],
            "osculating-circles": [],
            "meshes": [],
        }
        self.min = np.array([math.inf, math.inf])
        self.max = np.array([-math.inf, -math.inf])

    def _touch(self, xy: np.ndarray):
        self.min = np.minimum(self.min, xy.min(axis=0))
        self.max = np.maximum(self.max, xy.max(axis=0))

    def polyline(self, layer: str, xy: np.ndarray, cls: str, closed: bool = False):
        self._touch(xy)
        pts = " ".join(f"{_fmt(p[0])},{_fmt(-p[1])}" for p in xy)
        tag = "polygon" if closed else "polyline"
        self.layers[layer].append(f'<{tag} class="{cls}" points="{pts}" />')

    def segment(self, layer: str, a: np.ndarray, b: np.ndarray, cls: str):
        self._touch(np.array([a, b]))
        self.layers[layer].append(
            f'<line class="{cls}" x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" '
            f'x2="{_fmt(b[0])}" y2="{_fmt(-b[1])}" />'
        )

    def marker(self, layer: str, p: np.ndarray, r: float, cls: str):
        self._touch(p.reshape(1, 2))
        self.layers[layer].append(
            f'<circle class="{cls}" cx="{_fmt(p[0])}" cy="{_fmt(-p[1])}" r="{_fmt(r)}" />'
        )

    def circle(self, layer: str, center: np.ndarray, radius: float, cls: str):
        lo = center - radius
        hi = center + radius
        self._touch(np.array([lo, hi]))
        self.layers[layer].append(
            f'<circle class="{cls}" cx="{_fmt(center[0])}" cy="{_fmt(-center[1])}" '
            f'r="{_fmt(radius)}" />'
        )


_STYLE = """\
.curve { fill: none; stroke: #1f4e9c; stroke-width: calc(var(--lw) * 1.6); }
.control-polygon { fill: none; stroke: #999999; stroke-width: var(--lw); stroke-dasharray: calc(var(--lw) * 4) calc(var(--lw) * 3); }
.control-point { fill: #c03020; stroke: none; }
.comb { stroke: #2e8b57; stroke-width: calc(var(--lw) * 0.8); }
.comb-hull { fill: none; stroke: #2e8b57; stroke-width: calc(var(--lw) * 0.5); opacity: 0.6; }
.osculating { fill: none; stroke: #b06000; stroke-width: var(--lw); stroke-dasharray: calc(var(--lw) * 2) calc(var(--lw) * 2); }
.mesh { fill: none; stroke: #777799; stroke-width: calc(var(--lw) * 0.7); }
"""


def _project(doc: ModelDocument) -> "callable":
    """Documents with any 3D content get an oblique projection, z up."""
    planar = all(c.is_planar for c in doc.curves.values()) and not doc.surfaces
    if planar:
        return lambda a: a[..., :2]

    def oblique(a: np.ndarray) -> np.ndarray:
        out = np.empty(a.shape[:-1] + (2,))
        out[..., 0] = a[..., 0] + 0.35 * a[..., 1]
        out[..., 1] = a[..., 2] + 0.17 * a[..., 1]
        return out

    return oblique


def _eval(curve: RationalCurve, t: float) -> np.ndarray:
    p = eval_bezier(curve, t) if curve.is_bezier else eval_nurbs(curve, t)
    return p.as_array()


def _adaptive_polyline(curve: RationalCurve, tol: float, max_points: int) -> np.ndarray:
    """Chord-height-adaptive sampling, deterministic, boundaries included."""
    lo, hi = curve.domain
    ts = [lo, hi]
    pts = {lo: _eval(curve, lo), hi: _eval(curve, hi)}
    stack = [(lo, hi)]
    while stack and len(ts) < max_points:
        a, b = stack.pop()
        m = 0.5 * (a + b)
        pm = _eval(curve, m)
        chord = pts[b] - pts[a]
        clen = float(np.linalg.norm(chord))
        if clen == 0.0:
            dev = float(np.linalg.norm(pm - pts[a]))
        else:
            dev = float(np.linalg.norm(np.cross(pm - pts[a], chord))) / clen
        if dev > tol or (b - a) > 0.25 * (hi - lo):
            ts.append(m)
            pts[m] = pm
            stack.append((a, m))
            stack.append((m, b))
    ts.sort()
    return np.array([pts[t] for t in ts])


def render_svg(doc: ModelDocument, options: SvgOptions = SvgOptions()) -> str:
    """Render a document to SVG text; empty documents yield a valid empty scene."""
    scene = _Scene()
    project = _project(doc)

    # Reference diagonal for the chord tolerance, from control geometry.
    corners = []
    for curve in doc.curves.values():
        corners.append(project(curve.positions()))
    for surface in doc.surfaces.values():
        pos = np.array([[cp.position.as_array() for cp in row] for row in surface.net])
        corners.append(project(pos.reshape(-1, 3)))
    if corners:
        allpts = np.vstack(corners)
        diag = float(np.linalg.norm(allpts.max(axis=0) - allpts.min(axis=0)))
    else:
        diag = 0.0
    tol = options.chord_tolerance * diag if diag > 0.0 else 1e-3

    for name, curve in doc.curves.items():
        poly = project(_adaptive_polyline(curve, tol, options.max_points_per_curve))
        scene.polyline("curves", poly, "curve")
        if options.control_polygons:
            cpxy = project(curve.positions())
            scene.polyline("control-polygons", cpxy, "control-polygon")
            for p in cpxy:
                scene.marker("control-points", p, max(diag, 1.0) * 0.008, "control-point")
        if options.combs:
            comb = curvature_comb(curve, options.comb_samples, options.comb_scale)
            for s, tip in zip(comb.samples, comb.tips):
                scene.segment(
                    "combs", project(s.point.as_array()), project(tip.as_array()), "comb"
                )
        if options.end_circles:
            for end in ("start", "end"):
                try:
                    osc = end_curvature_circle(curve, end)
                except SingularityError:
                    continue
                scene.circle(
                    "osculating-circles", project(osc.center.as_array()), osc.radius, "osculating"
                )

    for name, surface in doc.surfaces.items():
        mesh = sample_mesh(surface, options.mesh_density, options.mesh_density)
        grid = project(mesh.points)
        for i in range(grid.shape[0]):
            scene.polyline("meshes", grid[i], "mesh")
        for j in range(grid.shape[1]):
            scene.polyline("meshes", grid[:, j], "mesh")

    empty = not any(scene.layers.values())
    if empty:
        scene.min = np.array([-1.0, -1.0])
        scene.max = np.array([1.0, 1.0])
    span = scene.max - scene.min
    margin = 0.05 * np.where(span > 0, span, 1.0)
    lo = scene.min - margin
    size = span + 2 * margin
    size = np.where(size > 0, size, 1.0)
    # y axis is flipped at emission time, so the box flips too
    view = (lo[0], -(scene.max[1] + margin[1]), size[0], size[1])
    height = options.width * size[1] / size[0]
    line_width = max(size[0], size[1]) / options.width

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(options.width)}" '
        f'height="{_fmt(height)}" viewBox="{_fmt(view[0])} {_fmt(view[1])} '
        f'{_fmt(view[2])} {_fmt(view[3])}">',
        f"<style>:root {{ --lw: {_fmt(line_width)}px; }}\n{_STYLE}</style>",
    ]
    if empty:
        parts.append("<desc>warning: empty scene (document has no entities)</desc>")
    if doc.name:
        parts.append(f"<title>{doc.name}</title>")
    for layer in ("meshes", "control-polygons", "curves", "combs", "osculating-circles", "control-points"):
        elements = scene.layers[layer]
        if elements:
            parts.append(f'<g class="layer-{layer}">')
            parts.extend(elements)
            parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
