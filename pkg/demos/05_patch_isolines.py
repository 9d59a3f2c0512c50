"""Isolines on a bicubic Bezier patch, the basic shape-interrogation view.

Collapsing one parameter direction of the control net with de Casteljau
yields each isoline as an ordinary Bezier curve lying exactly on the
surface; sweeping a family of them exposes bumps a rendered surface hides.
"""

import pathlib

import numpy as np

from cagdkit import (
    ControlPoint,
    KnotVector,
    ModelDocument,
    Point,
    SvgOptions,
    eval_surface,
    eval_nurbs,
    isolines,
    render_svg,
)
from cagdkit.surfaces import RationalSurface

out_dir = pathlib.Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# a gently domed patch with one deliberately raised interior control point
heights = np.zeros((4, 4))
heights[1, 2] = 0.9
net = tuple(
    tuple(ControlPoint(Point(i / 3, j / 3, heights[i, j])) for j in range(4))
    for i in range(4)
)
kv = KnotVector((0, 0, 0, 0, 1, 1, 1, 1), 3)
patch = RationalSurface(net, kv, kv, 3, 3)

values = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
family_u = isolines(patch, "u", values)
family_v = isolines(patch, "v", values)

# every isoline point lies on the surface
(iso,) = isolines(patch, "v", [0.4])
worst = max(
    float(np.abs(eval_nurbs(iso.curve, t).as_array() - eval_surface(patch, t, 0.4).as_array()).max())
    for t in np.linspace(0, 1, 100)
)
print(f"max isoline-vs-surface deviation: {worst:.2e}")

doc = ModelDocument(name="patch isolines")
for iso in family_u + family_v:
    doc = doc.with_curve(f"{iso.direction}={iso.value:g}", iso.curve)
svg_path = out_dir / "patch_isolines.svg"
svg_path.write_text(render_svg(doc, SvgOptions(control_polygons=False)))
print(f"wrote {svg_path} with {len(family_u) + len(family_v)} isolines")
