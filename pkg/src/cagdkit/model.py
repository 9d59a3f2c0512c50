"""Model documents and their native JSON serialization.

The JSON form is the single source of truth for the CLI, service and UI.
Serialization is deterministic: stable key order, floats in shortest
round-trip decimal, so identical documents produce byte-identical text.
The formal schema lives in schema/model.schema.json.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .curves import ControlPoint, KnotVector, Point, RationalCurve
from .errors import GeometryError, ParseError, ValidationError, VersionError
from .surfaces import RationalSurface

__all__ = [
    "SCHEMA_VERSION",
    "ModelDocument",
    "write_model_json",
    "read_model_json",
    "curve_to_obj",
    "curve_from_obj",
    "surface_to_obj",
    "surface_from_obj",
]

SCHEMA_VERSION = 1

_KNOWN_KEYS = {"schemaVersion", "name", "curves", "surfaces", "annotations"}


@dataclass(frozen=True)
class ModelDocument:
    """A named collection of curves and surfaces; the persistence unit.

    Immutable: the ``with_*`` helpers return updated copies, which is what
    lets the service hand out consistent snapshots without locking readers.
    """

    schema_version: int = SCHEMA_VERSION
    name: str = ""
    curves: dict[str, RationalCurve] = field(default_factory=dict)
    surfaces: dict[str, RationalSurface] = field(default_factory=dict)
    annotations: dict = field(default_factory=dict)

    def with_curve(self, name: str, curve: RationalCurve, replace_existing: bool = True) -> "ModelDocument":
        if not replace_existing and name in self.curves:
            raise ValidationError(f"curves[{name}]", "curve name already exists")
        return replace(self, curves={**self.curves, name: curve})

    def with_surface(self, name: str, surface: RationalSurface, replace_existing: bool = True) -> "ModelDocument":
        if not replace_existing and name in self.surfaces:
            raise ValidationError(f"surfaces[{name}]", "surface name already exists")
        return replace(self, surfaces={**self.surfaces, name: surface})

    def with_moved_control(
        self, name: str, index: int, x: float, y: float, z: float = 0.0, weight: float | None = None
    ) -> "ModelDocument":
        """Move one control point of a named curve; weight kept unless given."""
        curve = self.curves[name]
        if not 0 <= index < len(curve.control):
            raise KeyError(index)
        old = curve.control[index]
        w = old.weight if weight is None else weight
        try:
            cp = ControlPoint(Point(float(x), float(y), float(z)), float(w))
        except GeometryError as exc:
            raise ValidationError(f"curves[{name}].control[{index}]", str(exc)) from exc
        control = curve.control[:index] + (cp,) + curve.control[index + 1 :]
        moved = RationalCurve(control, curve.knots, curve.degree)
        return self.with_curve(name, moved)


# ---------------------------------------------------------------------------
# JSON encoding


def _cp_to_obj(cp: ControlPoint) -> dict:
    p = cp.position
    return {"x": p.x, "y": p.y, "z": p.z, "weight": cp.weight}


def curve_to_obj(curve: RationalCurve) -> dict:
    return {
        "degree": curve.degree,
        "knots": list(curve.knots.knots),
        "control": [_cp_to_obj(cp) for cp in curve.control],
    }


def surface_to_obj(surface: RationalSurface) -> dict:
    return {
        "degreeU": surface.degree_u,
        "degreeV": surface.degree_v,
        "knotsU": list(surface.knots_u.knots),
        "knotsV": list(surface.knots_v.knots),
        "net": [[_cp_to_obj(cp) for cp in row] for row in surface.net],
    }


def _document_to_obj(doc: ModelDocument) -> dict:
    return {
        "schemaVersion": doc.schema_version,
        "name": doc.name,
        "curves": [{"name": n, **curve_to_obj(c)} for n, c in doc.curves.items()],
        "surfaces": [{"name": n, **surface_to_obj(s)} for n, s in doc.surfaces.items()],
        "annotations": dict(doc.annotations),
    }


def write_model_json(doc: ModelDocument) -> str:
    """Serialize a document; output is byte-stable for equal documents."""
    return json.dumps(_document_to_obj(doc), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# JSON decoding with located diagnostics


def _want(obj: dict, key: str, kinds, path: str):
    if key not in obj:
        raise ValidationError(path, f"missing required key {key!r}")
    value = obj[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise ValidationError(f"{path}.{key}", f"unexpected type {type(value).__name__}")
    return value


def _number_list(obj: dict, key: str, path: str) -> list[float]:
    raw = _want(obj, key, list, path)
    out = []
    for i, v in enumerate(raw):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ValidationError(f"{path}.{key}[{i}]", "expected a number")
        out.append(float(v))
    return out


def _cp_from_obj(obj, path: str) -> ControlPoint:
    if not isinstance(obj, dict):
        raise ValidationError(path, "control point must be an object")
    x = _want(obj, "x", (int, float), path)
    y = _want(obj, "y", (int, float), path)
    z = obj.get("z", 0.0)
    w = obj.get("weight", 1.0)
    if not isinstance(z, (int, float)) or isinstance(z, bool):
        raise ValidationError(f"{path}.z", "expected a number")
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        raise ValidationError(f"{path}.weight", "expected a number")
    try:
        point = Point(float(x), float(y), float(z))
    except GeometryError as exc:
        raise ValidationError(path, str(exc)) from exc
    try:
        return ControlPoint(point, float(w))
    except GeometryError as exc:
        raise ValidationError(f"{path}.weight", str(exc)) from exc


def curve_from_obj(obj: dict, path: str = "curve") -> RationalCurve:
    degree = _want(obj, "degree", int, path)
    knots = _number_list(obj, "knots", path)
    raw_control = _want(obj, "control", list, path)
    control = tuple(
        _cp_from_obj(cp, f"{path}.control[{i}]") for i, cp in enumerate(raw_control)
    )
    try:
        kv = KnotVector(tuple(knots), degree)
    except GeometryError as exc:
        raise ValidationError(f"{path}.knots", str(exc)) from exc
    try:
        return RationalCurve(control, kv, degree)
    except GeometryError as exc:
        raise ValidationError(path, str(exc)) from exc


def surface_from_obj(obj: dict, path: str = "surface") -> RationalSurface:
    degree_u = _want(obj, "degreeU", int, path)
    degree_v = _want(obj, "degreeV", int, path)
    knots_u = _number_list(obj, "knotsU", path)
    knots_v = _number_list(obj, "knotsV", path)
    raw_net = _want(obj, "net", list, path)
    net = []
    for i, row in enumerate(raw_net):
        if not isinstance(row, list):
            raise ValidationError(f"{path}.net[{i}]", "expected a list of control points")
        net.append(
            tuple(_cp_from_obj(cp, f"{path}.net[{i}][{j}]") for j, cp in enumerate(row))
        )
    try:
        kv_u = KnotVector(tuple(knots_u), degree_u)
    except GeometryError as exc:
        raise ValidationError(f"{path}.knotsU", str(exc)) from exc
    try:
        kv_v = KnotVector(tuple(knots_v), degree_v)
    except GeometryError as exc:
        raise ValidationError(f"{path}.knotsV", str(exc)) from exc
    try:
        return RationalSurface(tuple(net), kv_u, kv_v, degree_u, degree_v)
    except GeometryError as exc:
        raise ValidationError(path, str(exc)) from exc


def document_from_obj(obj) -> ModelDocument:
    if not isinstance(obj, dict):
        raise ValidationError("$", "document must be a JSON object")
    version = _want(obj, "schemaVersion", int, "$")
    if version > SCHEMA_VERSION:
        raise VersionError(f"schemaVersion {version} is newer than supported {SCHEMA_VERSION}")
    if version < 1:
        raise ValidationError("$.schemaVersion", f"invalid schema version {version}")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise ValidationError("$.name", "expected a string")

    curves: dict[str, RationalCurve] = {}
    for i, entry in enumerate(obj.get("curves", [])):
        path = f"curves[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError(path, "expected an object")
        cname = _want(entry, "name", str, path)
        if cname in curves:
            raise ValidationError(f"{path}.name", f"duplicate curve name {cname!r}")
        curves[cname] = curve_from_obj(entry, path)

    surfaces: dict[str, RationalSurface] = {}
    for i, entry in enumerate(obj.get("surfaces", [])):
        path = f"surfaces[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError(path, "expected an object")
        sname = _want(entry, "name", str, path)
        if sname in surfaces:
            raise ValidationError(f"{path}.name", f"duplicate surface name {sname!r}")
        surfaces[sname] = surface_from_obj(entry, path)

    annotations = dict(obj.get("annotations", {}))
    # Tolerance policy: unknown top-level keys are kept, namespaced into
    # annotations, so foreign documents survive a round trip.
    for key, value in obj.items():
        if key not in _KNOWN_KEYS:
            annotations.setdefault(key, value)

    return ModelDocument(version, name, curves, surfaces, annotations)


def read_model_json(text: str) -> ModelDocument:
    """Parse and validate a model document.

    Raises ParseError for malformed JSON, VersionError for documents newer
    than this library, ValidationError (with a location path) for invariant
    violations.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", line=exc.lineno) from exc
    return document_from_obj(obj)
