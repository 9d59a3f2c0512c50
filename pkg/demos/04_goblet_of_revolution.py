"""A goblet: revolve a smooth profile curve about the z axis.

The profile is a clamped cubic B-spline in the xz half-plane (stem,
bowl, lip).  Revolution is exact: the circular direction reuses the
nine-point rational circle, so every surface point sits at distance
profile-x from the axis, to round-off.
"""

import math
import pathlib

from cagdkit import (
    ControlPoint,
    KnotVector,
    ModelDocument,
    Point,
    RationalCurve,
    eval_nurbs,
    eval_surface,
    render_svg,
    revolve,
    sample_mesh,
)

out_dir = pathlib.Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# foot, stem, bowl and lip of the goblet, bottom to top
profile_xy = [
    (0.9, 0.0),
    (0.9, 0.12),
    (0.12, 0.3),
    (0.12, 1.0),
    (1.05, 1.3),
    (1.0, 2.2),
    (1.06, 2.4),
]
knots = KnotVector((0, 0, 0, 0, 0.3, 0.55, 0.8, 1, 1, 1, 1), 3)
profile = RationalCurve(
    tuple(ControlPoint(Point(x, 0.0, z)) for x, z in profile_xy), knots, 3
)

goblet = revolve(profile)
nu, nv = goblet.shape
print(f"revolved control net: {nu} x {nv} (profile x circle structure)")

# exactness spot check: distance to the axis equals the profile x
for u in (0.1, 0.5, 0.9):
    px = eval_nurbs(profile, u).x
    p = eval_surface(goblet, u, 0.37)
    print(f"u={u:.1f}: profile x = {px:.6f}, surface axis distance = "
          f"{math.hypot(p.x, p.y):.6f} (difference {abs(math.hypot(p.x, p.y) - px):.2e})")

mesh = sample_mesh(goblet, 25, 33, with_normals=True)
print(f"sampled mesh {mesh.points.shape[0]} x {mesh.points.shape[1]}, "
      f"{len(mesh.degenerate)} degenerate normals")

doc = ModelDocument(name="goblet").with_surface("goblet", goblet)
svg_path = out_dir / "goblet.svg"
svg_path.write_text(render_svg(doc))
print(f"wrote {svg_path}")
