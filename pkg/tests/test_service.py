"""HTTP service: endpoints, revision discipline, structured errors."""

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from cagdkit import ModelDocument, Point, bezier_curve, eval_bezier, make_circle_nurbs, revolve
from cagdkit.model import write_model_json
from cagdkit.service import ModelStore, create_app


@pytest.fixture
def client():
    store = ModelStore()
    return TestClient(create_app(store))


@pytest.fixture
def seeded_client():
    doc = ModelDocument(name="studio")
    doc = doc.with_curve("circle", make_circle_nurbs(Point(0, 0), 1.0))
    doc = doc.with_curve("arc", bezier_curve([(0, 0), (1, 2), (3, 2), (4, 0)]))
    doc = doc.with_surface("cyl", revolve(bezier_curve([(1, 0, 0), (1, 0, 1)])))
    return TestClient(create_app(ModelStore(doc)))


CUBIC_OBJ = {
    "degree": 3,
    "knots": [0, 0, 0, 0, 1, 1, 1, 1],
    "control": [
        {"x": 0, "y": 0, "z": 0, "weight": 1},
        {"x": 1, "y": 1, "z": 0, "weight": 1},
        {"x": 2, "y": -1, "z": 0, "weight": 1},
        {"x": 3, "y": 0, "z": 0, "weight": 1},
    ],
}


class TestHealthAndModel:
    def test_health_reports_revision(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "ok"
        assert body["revision"] == 0

    def test_get_model_round_trips_document(self, seeded_client):
        r = seeded_client.get("/model")
        assert r.status_code == 200
        body = r.json()
        assert body["revision"] == 0
        names = [c["name"] for c in body["model"]["curves"]]
        assert names == ["circle", "arc"]

    def test_put_model_replaces_document(self, client):
        doc = ModelDocument(name="fresh").with_curve("c", bezier_curve([(0, 0), (1, 1)]))
        r = client.put("/model", content=write_model_json(doc))
        assert r.status_code == 200
        assert r.json()["revision"] == 1
        model = client.get("/model").json()["model"]
        assert model["name"] == "fresh"

    def test_put_invalid_model_is_422_and_keeps_revision(self, client):
        r = client.put("/model", content=json.dumps({"schemaVersion": 1, "curves": [{}]}))
        assert r.status_code == 422
        assert client.get("/health").json()["revision"] == 0


class TestCurveLifecycle:
    def test_post_then_sample_endpoint_interpolation(self, client):
        r = client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        assert r.status_code == 200
        assert r.json() == {"revision": 1, "name": "cubic"}
        samples = client.get("/curves/cubic/samples", params={"n": 3}).json()
        first, last = samples["points"][0], samples["points"][-1]
        assert first == [0, 0, 0]
        assert last == [3, 0, 0]

    def test_duplicate_name_is_422(self, client):
        client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        r = client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        assert r.status_code == 422
        body = r.json()
        assert body["code"] == "invalid" and "cubic" in body["path"]

    def test_patch_moves_control_and_bumps_revision(self, client):
        client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        before = client.get("/curves/cubic/comb", params={"n": 8, "scale": 1.0}).json()
        r = client.patch("/curves/cubic/control/1", json={"x": 1.0, "y": 3.0, "z": 0.0})
        assert r.status_code == 200
        assert r.json()["revision"] == 2
        after = client.get("/curves/cubic/comb", params={"n": 8, "scale": 1.0}).json()
        assert after["revision"] == 2
        assert after["tips"] != before["tips"]
        model = client.get("/model").json()["model"]
        assert model["curves"][0]["control"][1]["y"] == 3.0

    def test_patch_unknown_curve_is_404(self, client):
        r = client.patch("/curves/ghost/control/0", json={"x": 0, "y": 0})
        assert r.status_code == 404
        body = r.json()
        assert body["code"] == "not_found" and "/curves/ghost" in body["path"]

    def test_patch_bad_index_is_404(self, client):
        client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        assert client.patch("/curves/cubic/control/99", json={"x": 0, "y": 0}).status_code == 404

    def test_patch_negative_weight_is_422(self, client):
        client.post("/curves", json={"name": "cubic", "curve": CUBIC_OBJ})
        r = client.patch("/curves/cubic/control/1", json={"x": 0, "y": 0, "weight": -1})
        assert r.status_code == 422
        assert "control[1]" in r.json()["path"]

    def test_malformed_body_is_400(self, client):
        r = client.post("/curves", content="{not json", headers={"content-type": "application/json"})
        assert r.status_code == 400
        assert r.json()["code"] == "malformed"

    def test_missing_fields_are_400(self, client):
        r = client.patch("/curves/any/control/0", json={"y": 1.0})
        assert r.status_code == 400

    def test_revision_is_gapless(self, client):
        revisions = []
        revisions.append(client.post("/curves", json={"name": "a", "curve": CUBIC_OBJ}).json()["revision"])
        revisions.append(client.patch("/curves/a/control/0", json={"x": 0, "y": 1}).json()["revision"])
        client.post("/curves", json={"name": "a", "curve": CUBIC_OBJ})  # fails: duplicate
        revisions.append(client.patch("/curves/a/control/0", json={"x": 0, "y": 2}).json()["revision"])
        assert revisions == [1, 2, 3]


class TestInterrogationEndpoints:
    def test_transport_fidelity_of_samples(self, seeded_client):
        curve = bezier_curve([(0, 0), (1, 2), (3, 2), (4, 0)])
        samples = seeded_client.get("/curves/arc/samples", params={"n": 50}).json()["points"]
        for got, t in zip(samples, np.linspace(0, 1, 50)):
            expected = eval_bezier(curve, float(t)).as_array()
            assert np.abs(np.array(got) - expected).max() < 1e-12

    def test_comb_payload_invariant(self, seeded_client):
        comb = seeded_client.get(
            "/curves/circle/comb", params={"n": 16, "scale": 0.25}
        ).json()
        assert len(comb["samples"]) == 16 and len(comb["tips"]) == 16
        for s, tip in zip(comb["samples"], comb["tips"]):
            gap = np.linalg.norm(np.array(tip) - np.array(s["point"]))
            assert abs(gap - 0.25 * abs(s["kappa"])) < 1e-12

    def test_spiral_report_over_the_wire(self, client):
        r = client.post(
            "/spiral/solve",
            json={"start": {"x": 0, "y": 0}, "turnAngle": 0.7, "endCurvature": 1.5, "name": "s"},
        )
        assert r.status_code == 200
        assert r.json()["revision"] == 1
        report = client.get("/curves/s/spiral-report").json()
        assert report["monotone"] is True
        assert abs(report["kappaEnd"] - 1.5) < 1e-6
        assert report["inflectionCount"] == 0

    def test_spiral_solve_domain_error_is_422(self, client):
        r = client.post(
            "/spiral/solve", json={"turnAngle": 3.0, "endCurvature": 1.0, "name": "bad"}
        )
        assert r.status_code == 422

    def test_continuity_query(self, seeded_client):
        r = seeded_client.get("/continuity", params={"a": "arc", "b": "circle"})
        assert r.status_code == 200
        body = r.json()
        assert body["level"] in ("NONE", "G0", "G1", "G2")
        assert {"positionGap", "tangentAngleGap", "curvatureGap"} <= set(body)

    def test_continuity_unknown_name(self, seeded_client):
        assert seeded_client.get("/continuity", params={"a": "arc", "b": "nope"}).status_code == 404


class TestSurfaceEndpoints:
    def test_mesh(self, seeded_client):
        mesh = seeded_client.get("/surfaces/cyl/mesh", params={"nu": 4, "nv": 5}).json()
        pts = np.array(mesh["points"])
        assert pts.shape == (4, 5, 3)
        assert np.abs(np.hypot(pts[..., 0], pts[..., 1]) - 1.0).max() < 1e-12

    def test_isolines_requires_bezier_patch(self, seeded_client):
        r = seeded_client.get("/surfaces/cyl/isolines", params={"dir": "v", "values": "0.5"})
        assert r.status_code == 422

    def test_isolines_on_patch(self, client):
        patch = {
            "degreeU": 1,
            "degreeV": 1,
            "knotsU": [0, 0, 1, 1],
            "knotsV": [0, 0, 1, 1],
            "net": [
                [{"x": 0, "y": 0, "z": 0}, {"x": 0, "y": 1, "z": 0}],
                [{"x": 1, "y": 0, "z": 0}, {"x": 1, "y": 1, "z": 0}],
            ],
        }
        client.post("/surfaces", json={"name": "sheet", "surface": patch})
        body = client.get(
            "/surfaces/sheet/isolines", params={"dir": "v", "values": "0,0.5,1"}
        ).json()
        assert [iso["value"] for iso in body["isolines"]] == [0, 0.5, 1]

    def test_unknown_surface_404(self, client):
        assert client.get("/surfaces/ghost/mesh").status_code == 404


class TestExportAndRender:
    def test_export_iges(self, seeded_client):
        r = seeded_client.get("/export/iges")
        assert r.status_code == 200
        for line in r.text.splitlines():
            assert len(line) == 80

    def test_render_svg_content_type(self, seeded_client):
        r = seeded_client.get("/render")
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("image/svg+xml")
        assert r.text.startswith("<?xml")

    def test_render_layer_toggles(self, seeded_client):
        with_polys = seeded_client.get("/render", params={"polygons": "1"}).text
        without = seeded_client.get("/render", params={"polygons": "0"}).text
        assert 'class="control-polygon"' in with_polys
        assert 'class="control-polygon"' not in without
