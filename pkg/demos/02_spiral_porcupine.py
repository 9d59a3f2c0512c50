"""A cubic spiral with its porcupine plot and end-curvature circle.

The spiral turns its tangent by 45 degrees while the curvature climbs
monotonically from zero to 1 — the fair-transition shape used in highway
and trajectory design.  The curvature comb makes the monotone growth
visible; the dashed circle is the osculating circle at the curved end.
"""

import math
import pathlib

from cagdkit import (
    ModelDocument,
    Point,
    SpiralSpec,
    SvgOptions,
    check_spiral,
    curvature_comb,
    end_curvature_circle,
    make_cubic_spiral,
    render_svg,
)

out_dir = pathlib.Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

spec = SpiralSpec(
    start=Point(0.0, 0.0),
    start_tangent_angle=0.0,
    turn_angle=math.pi / 4,
    end_curvature=1.0,
)
spiral = make_cubic_spiral(spec)

report = check_spiral(spiral, n=1000)
print(f"monotone curvature: {report.monotone}")
print(f"kappa(0) = {report.kappa_start:.2e},  kappa(1) = {report.kappa_end:.9f}")
print(f"largest adverse curvature step: {report.max_violation:.2e}")

osculating = end_curvature_circle(spiral, "end")
print(f"end-curvature circle: center ({osculating.center.x:.4f}, {osculating.center.y:.4f}), "
      f"radius {osculating.radius:.6f}")

comb = curvature_comb(spiral, n=64)
print(f"comb of {len(comb.samples)} quills, auto scale {comb.scale:.4f}")

doc = ModelDocument(name="cubic spiral").with_curve("spiral", spiral)
svg_path = out_dir / "spiral_porcupine.svg"
svg_path.write_text(
    render_svg(doc, SvgOptions(combs=True, comb_samples=64, end_circles=True))
)
print(f"wrote {svg_path}")
