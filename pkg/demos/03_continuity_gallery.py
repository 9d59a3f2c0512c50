"""How the joint classifier tells G2 from G1, G0 and a plain gap.

Starting from the two halves of one cubic (a perfectly G2 joint by
construction), each deliberate defect downgrades the classification:
translate the right half and position breaks; kink it and only position
holds; scale it about the joint and tangents survive but curvature halves.
"""

from cagdkit import (
    ControlPoint,
    Point,
    RationalCurve,
    bezier_curve,
    check_continuity,
    subdivide_bezier,
)

curve = bezier_curve([(0, 0), (1, 2), (3, 2), (4, 0)])
left, right = subdivide_bezier(curve, 0.5)


def rebuilt(source, transform):
    control = tuple(
        ControlPoint(Point(*transform(cp.position.as_array())), cp.weight)
        for cp in source.control
    )
    return RationalCurve(control, source.knots, source.degree)


joint = right.control[0].position.as_array()

cases = {
    "halves of one cubic": right,
    "right half translated by (0, 0.1)": rebuilt(right, lambda p: p + [0.0, 0.1, 0.0]),
    "right half scaled x2 about the joint": rebuilt(right, lambda p: joint + 2.0 * (p - joint)),
    "right half mirrored through the joint tangent": rebuilt(
        right, lambda p: [p[0], 2 * joint[1] - p[1], p[2]]
    ),
}

for label, candidate in cases.items():
    report = check_continuity(left, candidate)
    print(f"{label}:")
    print(f"  level {report.level}  position gap {report.position_gap:.2e}  "
          f"tangent gap {report.tangent_angle_gap:.2e} rad  "
          f"curvature gap {report.curvature_gap:.2e}")
