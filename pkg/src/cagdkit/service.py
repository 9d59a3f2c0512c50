"""JSON-over-HTTP design service: the transport behind the studio UI.

Single document per process.  Mutations serialize through one lock and bump
a gapless revision counter; reads work on immutable snapshots, so they never
observe partial mutations.  Every mutating response carries the new
revision.  Errors are structured: {"code", "message", "path"} with 404 for
unknown names, 422 for invariant violations, 400 for malformed bodies.
"""

from __future__ import annotations

import json
import threading

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .curves import Point, RationalCurve, SpiralSpec, eval_bezier, eval_nurbs, make_cubic_spiral
from .errors import GeometryError, ParseError, ValidationError
from .interrogate import check_continuity, check_spiral, curvature_comb
from .iges import write_iges
from .model import (
    ModelDocument,
    curve_from_obj,
    curve_to_obj,
    document_from_obj,
    surface_from_obj,
    write_model_json,
)
from .surfaces import isolines, sample_mesh
from .svg import SvgOptions, render_svg

__all__ = ["ModelStore", "create_app"]


class ModelStore:
    """Holds the current document snapshot and its revision.

    Concurrent readers get a consistent (document, revision) pair; writers
    serialize through the lock and bump the revision by exactly one per
    successful mutation.
    """

    def __init__(self, doc: ModelDocument | None = None):
        self._doc = doc if doc is not None else ModelDocument()
        self._revision = 0
        self._lock = threading.Lock()

    def snapshot(self) -> tuple[ModelDocument, int]:
        with self._lock:
            return self._doc, self._revision

    def mutate(self, fn) -> int:
        """Apply doc -> doc under the write gate; returns the new revision."""
        with self._lock:
            self._doc = fn(self._doc)
            self._revision += 1
            return self._revision


class _HttpError(Exception):
    def __init__(self, status: int, code: str, message: str, path: str):
        self.status = status
        self.code = code
        self.message = message
        self.path = path


def _not_found(path: str, message: str) -> _HttpError:
    return _HttpError(404, "not_found", message, path)


async def _body_json(request: Request) -> dict:
    raw = await request.body()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise _HttpError(400, "malformed", f"malformed JSON body: {exc.msg}", request.url.path)
    if not isinstance(obj, dict):
        raise _HttpError(400, "malformed", "body must be a JSON object", request.url.path)
    return obj


def _number(obj: dict, key: str, request: Request, default=None) -> float:
    if key not in obj:
        if default is not None:
            return default
        raise _HttpError(400, "malformed", f"missing required field {key!r}", request.url.path)
    v = obj[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise _HttpError(400, "malformed", f"field {key!r} must be a number", request.url.path)
    return float(v)


def _point_obj(p: Point) -> list[float]:
    return [p.x, p.y, p.z]


def _sample_points(curve: RationalCurve, n: int) -> list[list[float]]:
    lo, hi = curve.domain
    pts = []
    for i in range(n):
        t = lo + (hi - lo) * i / (n - 1)
        p = eval_bezier(curve, t) if curve.is_bezier else eval_nurbs(curve, t)
        pts.append(_point_obj(p))
    return pts


def create_app(store: ModelStore) -> FastAPI:
    app = FastAPI(title="cagdkit design service", docs_url=None, redoc_url=None)

    @app.exception_handler(_HttpError)
    async def _http_error(_request, exc: _HttpError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "path": exc.path},
        )

    def _get_curve(doc: ModelDocument, name: str, request: Request) -> RationalCurve:
        if name not in doc.curves:
            raise _not_found(request.url.path, f"no curve named {name!r}")
        return doc.curves[name]

    def _mutate(fn, request: Request) -> int:
        try:
            return store.mutate(fn)
        except KeyError as exc:
            raise _not_found(request.url.path, f"unknown name or index: {exc}") from exc
        except ValidationError as exc:
            raise _HttpError(422, "invalid", exc.reason, exc.path) from exc
        except (GeometryError, ParseError) as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path) from exc

    def _positive_int(raw: str, name: str, request: Request, minimum: int = 2) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise _HttpError(400, "malformed", f"{name} must be an integer", request.url.path)
        if value < minimum:
            raise _HttpError(400, "malformed", f"{name} must be >= {minimum}", request.url.path)
        return value

    @app.get("/health")
    async def health():
        doc, revision = store.snapshot()
        return {
            "status": "ok",
            "revision": revision,
            "curves": len(doc.curves),
            "surfaces": len(doc.surfaces),
        }

    @app.get("/model")
    async def get_model():
        doc, revision = store.snapshot()
        return {"revision": revision, "model": json.loads(write_model_json(doc))}

    @app.put("/model")
    async def put_model(request: Request):
        obj = await _body_json(request)
        try:
            doc = document_from_obj(obj)
        except ValidationError as exc:
            raise _HttpError(422, "invalid", exc.reason, exc.path)
        except (GeometryError, ParseError) as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        revision = _mutate(lambda _old: doc, request)
        return {"revision": revision}

    @app.post("/curves")
    async def post_curve(request: Request):
        obj = await _body_json(request)
        name = obj.get("name")
        if not isinstance(name, str) or not name:
            raise _HttpError(400, "malformed", "field 'name' must be a non-empty string", request.url.path)
        if not isinstance(obj.get("curve"), dict):
            raise _HttpError(400, "malformed", "field 'curve' must be an object", request.url.path)
        try:
            curve = curve_from_obj(obj["curve"], f"curves[{name}]")
        except ValidationError as exc:
            raise _HttpError(422, "invalid", exc.reason, exc.path)
        revision = _mutate(lambda doc: doc.with_curve(name, curve, replace_existing=False), request)
        return {"revision": revision, "name": name}

    @app.post("/surfaces")
    async def post_surface(request: Request):
        obj = await _body_json(request)
        name = obj.get("name")
        if not isinstance(name, str) or not name:
            raise _HttpError(400, "malformed", "field 'name' must be a non-empty string", request.url.path)
        if not isinstance(obj.get("surface"), dict):
            raise _HttpError(400, "malformed", "field 'surface' must be an object", request.url.path)
        try:
            surface = surface_from_obj(obj["surface"], f"surfaces[{name}]")
        except ValidationError as exc:
            raise _HttpError(422, "invalid", exc.reason, exc.path)
        revision = _mutate(
            lambda doc: doc.with_surface(name, surface, replace_existing=False), request
        )
        return {"revision": revision, "name": name}

    @app.patch("/curves/{name}/control/{index}")
    async def patch_control(name: str, index: int, request: Request):
        obj = await _body_json(request)
        x = _number(obj, "x", request)
        y = _number(obj, "y", request)
        z = _number(obj, "z", request, default=0.0)
        weight = obj.get("weight")
        if weight is not None and (not isinstance(weight, (int, float)) or isinstance(weight, bool)):
            raise _HttpError(400, "malformed", "field 'weight' must be a number", request.url.path)
        doc, _ = store.snapshot()
        _get_curve(doc, name, request)
        revision = _mutate(
            lambda d: d.with_moved_control(name, index, x, y, z, weight), request
        )
        return {"revision": revision, "name": name, "index": index}

    @app.get("/curves/{name}/samples")
    async def curve_samples(name: str, request: Request, n: str = "100"):
        doc, revision = store.snapshot()
        curve = _get_curve(doc, name, request)
        count = _positive_int(n, "n", request)
        return {"revision": revision, "name": name, "points": _sample_points(curve, count)}

    @app.get("/curves/{name}/comb")
    async def curve_comb(name: str, request: Request, n: str = "64", scale: str | None = None):
        doc, revision = store.snapshot()
        curve = _get_curve(doc, name, request)
        count = _positive_int(n, "n", request)
        comb_scale = None
        if scale is not None:
            try:
                comb_scale = float(scale)
            except ValueError:
                raise _HttpError(400, "malformed", "scale must be a number", request.url.path)
        try:
            comb = curvature_comb(curve, count, comb_scale)
        except GeometryError as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        return {
            "revision": revision,
            "name": name,
            "scale": comb.scale,
            "samples": [
                {
                    "t": s.t,
                    "point": _point_obj(s.point),
                    "tangent": [float(c) for c in s.tangent],
                    "normal": [float(c) for c in s.normal],
                    "kappa": s.kappa,
                }
                for s in comb.samples
            ],
            "tips": [_point_obj(p) for p in comb.tips],
        }

    @app.get("/curves/{name}/spiral-report")
    async def spiral_report(name: str, request: Request, n: str = "1000", tol: str = "1e-9"):
        doc, revision = store.snapshot()
        curve = _get_curve(doc, name, request)
        count = _positive_int(n, "n", request, minimum=16)
        try:
            tolerance = float(tol)
        except ValueError:
            raise _HttpError(400, "malformed", "tol must be a number", request.url.path)
        try:
            report = check_spiral(curve, count, tolerance)
        except GeometryError as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        return {
            "revision": revision,
            "name": name,
            "monotone": report.monotone,
            "kappaStart": report.kappa_start,
            "kappaEnd": report.kappa_end,
            "maxViolation": report.max_violation,
            "inflectionCount": report.inflection_count,
        }

    @app.get("/continuity")
    async def continuity(request: Request, a: str, b: str):
        doc, revision = store.snapshot()
        ca = _get_curve(doc, a, request)
        cb = _get_curve(doc, b, request)
        try:
            report = check_continuity(ca, cb)
        except GeometryError as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        return {
            "revision": revision,
            "level": str(report.level),
            "positionGap": report.position_gap,
            "tangentAngleGap": report.tangent_angle_gap,
            "curvatureGap": report.curvature_gap,
        }

    @app.get("/surfaces/{name}/mesh")
    async def surface_mesh(
        name: str, request: Request, nu: str = "17", nv: str = "17", normals: str = "0"
    ):
        doc, revision = store.snapshot()
        if name not in doc.surfaces:
            raise _not_found(request.url.path, f"no surface named {name!r}")
        mesh = sample_mesh(
            doc.surfaces[name],
            _positive_int(nu, "nu", request),
            _positive_int(nv, "nv", request),
            with_normals=normals not in ("0", "false", ""),
        )
        payload = {
            "revision": revision,
            "name": name,
            "us": list(mesh.us),
            "vs": list(mesh.vs),
            "points": mesh.points.tolist(),
            "degenerate": [list(ij) for ij in mesh.degenerate],
        }
        if mesh.normals is not None:
            payload["normals"] = mesh.normals.tolist()
        return payload

    @app.get("/surfaces/{name}/isolines")
    async def surface_isolines(name: str, request: Request, dir: str = "v", values: str = "0.5"):
        doc, revision = store.snapshot()
        if name not in doc.surfaces:
            raise _not_found(request.url.path, f"no surface named {name!r}")
        try:
            parsed = [float(v) for v in values.split(",") if v != ""]
        except ValueError:
            raise _HttpError(400, "malformed", "values must be comma-separated numbers", request.url.path)
        try:
            lines = isolines(doc.surfaces[name], dir, parsed)
        except GeometryError as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        return {
            "revision": revision,
            "name": name,
            "isolines": [
                {"direction": iso.direction, "value": iso.value, "curve": curve_to_obj(iso.curve)}
                for iso in lines
            ],
        }

    @app.post("/spiral/solve")
    async def spiral_solve(request: Request):
        obj = await _body_json(request)
        start = obj.get("start", {})
        if not isinstance(start, dict):
            raise _HttpError(400, "malformed", "field 'start' must be an object", request.url.path)
        name = obj.get("name", "spiral")
        if not isinstance(name, str) or not name:
            raise _HttpError(400, "malformed", "field 'name' must be a non-empty string", request.url.path)
        try:
            spec = SpiralSpec(
                Point(
                    _number(start, "x", request, default=0.0),
                    _number(start, "y", request, default=0.0),
                    _number(start, "z", request, default=0.0),
                ),
                _number(obj, "startTangentAngle", request, default=0.0),
                _number(obj, "turnAngle", request),
                _number(obj, "endCurvature", request),
            )
            curve = make_cubic_spiral(spec)
        except GeometryError as exc:
            raise _HttpError(422, "invalid", str(exc), request.url.path)
        revision = _mutate(lambda doc: doc.with_curve(name, curve, replace_existing=False), request)
        return {"revision": revision, "name": name, "curve": curve_to_obj(curve)}

    @app.get("/export/iges")
    async def export_iges():
        doc, revision = store.snapshot()
        return Response(
            content=write_iges(doc),
            media_type="text/plain; charset=us-ascii",
            headers={"X-Model-Revision": str(revision)},
        )

    @app.get("/render")
    async def render(request: Request, polygons: str = "1", combs: str = "0", circles: str = "0"):
        doc, revision = store.snapshot()
        svg = render_svg(
            doc,
            SvgOptions(
                control_polygons=polygons not in ("0", "false", ""),
                combs=combs not in ("0", "false", ""),
                end_circles=circles not in ("0", "false", ""),
            ),
        )
        return Response(
            content=svg,
            media_type="image/svg+xml",
            headers={"X-Model-Revision": str(revision)},
        )

    return app
