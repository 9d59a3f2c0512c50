"""cagdkit: a CAGD kernel for rational curves and surfaces.

Evaluation (de Casteljau / de Boor), exact NURBS circles, cubic spiral
construction, curvature interrogation and continuity classification,
surfaces of revolution and Bezier-patch isolines, IGES 126/128
interchange, SVG rendering, and a JSON-over-HTTP design service.
"""

from .curves import (
    ControlPoint,
    KnotVector,
    Point,
    RationalCurve,
    SpiralSpec,
    bezier_curve,
    bezier_derivatives,
    eval_bezier,
    eval_nurbs,
    make_circle_nurbs,
    make_cubic_spiral,
    nurbs_derivatives,
    subdivide_bezier,
)
from .errors import (
    DomainError,
    FormError,
    GeometryError,
    InfiniteRadiusError,
    ParseError,
    SingularityError,
    ValidationError,
    VersionError,
)
from .interrogate import (
    Circle,
    ContinuityReport,
    CurvatureComb,
    CurvatureSample,
    GLevel,
    SpiralReport,
    bending_energy,
    check_continuity,
    check_spiral,
    curvature,
    curvature_comb,
    end_curvature_circle,
)
from .iges import IgesDocument, ImportReport, read_iges, write_iges
from .model import ModelDocument, read_model_json, write_model_json
from .surfaces import (
    Isoline,
    RationalSurface,
    SurfaceMesh,
    eval_surface,
    isolines,
    revolve,
    sample_mesh,
    surface_normal,
)
from .svg import SvgOptions, render_svg

__version__ = "0.1.0"

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
    "RationalSurface",
    "Isoline",
    "SurfaceMesh",
    "eval_surface",
    "surface_normal",
    "revolve",
    "isolines",
    "sample_mesh",
    "ModelDocument",
    "write_model_json",
    "read_model_json",
    "IgesDocument",
    "ImportReport",
    "write_iges",
    "read_iges",
    "SvgOptions",
    "render_svg",
    "GeometryError",
    "DomainError",
    "FormError",
    "SingularityError",
    "InfiniteRadiusError",
    "ValidationError",
    "ParseError",
    "VersionError",
]
