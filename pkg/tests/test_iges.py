"""IGES 5.3 subset writer/reader: column discipline and geometry round trips."""

import numpy as np
import pytest

from cagdkit import (
    ModelDocument,
    ParseError,
    Point,
    bezier_curve,
    eval_nurbs,
    eval_surface,
    make_circle_nurbs,
    make_cubic_spiral,
    read_iges,
    revolve,
    write_iges,
    SpiralSpec,
)
from cagdkit.surfaces import RationalSurface
from cagdkit.curves import ControlPoint, KnotVector, _bezier_knots


def fixture_document():
    doc = ModelDocument(name="exchange")
    doc = doc.with_curve("circle", make_circle_nurbs(Point(0.5, -2.0), 1.25))
    doc = doc.with_curve("spiral", make_cubic_spiral(SpiralSpec(Point(0, 0), 0.1, 0.9, 2.0)))
    doc = doc.with_curve("ramp", bezier_curve([(0, 0, 0), (1, 0.5, 0.25), (2, 0, 1)]))
    doc = doc.with_surface("cup", revolve(bezier_curve([(1, 0, 0), (1.4, 0, 0.8), (0.7, 0, 1.6)])))
    kv = _bezier_knots(1)
    patch = RationalSurface(
        (
            (ControlPoint(Point(0, 0, 0)), ControlPoint(Point(0, 2, 0.5))),
            (ControlPoint(Point(2, 0, 0.5)), ControlPoint(Point(2, 2, 1.0))),
        ),
        kv,
        kv,
        1,
        1,
    )
    return doc.with_surface("sheet", patch)


class TestColumnDiscipline:
    def test_every_line_is_80_chars_with_valid_letter(self):
        text = write_iges(fixture_document())
        lines = text.splitlines()
        assert lines
        for line in lines:
            assert len(line) == 80
            assert line[72] in "SGDPT"

    def test_sequence_numbers_are_section_local_and_gapless(self):
        text = write_iges(fixture_document())
        seqs: dict[str, list[int]] = {}
        for line in text.splitlines():
            seqs.setdefault(line[72], []).append(int(line[73:80]))
        for letter, numbers in seqs.items():
            assert numbers == list(range(1, len(numbers) + 1)), letter

    def test_terminate_counts_match(self):
        text = write_iges(fixture_document())
        lines = text.splitlines()
        counts = {letter: sum(1 for l in lines if l[72] == letter) for letter in "SGDP"}
        tline = lines[-1]
        assert tline[72] == "T"
        recorded = {tline[i * 8]: int(tline[i * 8 + 1 : i * 8 + 8]) for i in range(4)}
        assert recorded == counts

    def test_directory_entries_come_in_pairs(self):
        text = write_iges(fixture_document())
        dlines = [l for l in text.splitlines() if l[72] == "D"]
        assert len(dlines) % 2 == 0
        doc = fixture_document()
        assert len(dlines) // 2 == len(doc.curves) + len(doc.surfaces)

    def test_p_lines_carry_directory_back_pointer(self):
        text = write_iges(fixture_document())
        plines = [l for l in text.splitlines() if l[72] == "P"]
        for line in plines:
            ptr = int(line[65:72])
            assert ptr % 2 == 1  # first D line of the owning entry

    def test_empty_document_is_still_valid(self):
        text = write_iges(ModelDocument())
        doc, report = read_iges(text)
        assert not doc.curves and not doc.surfaces
        assert report.imported == {} and report.skipped == ()


class TestParameterStream:
    def test_degree_one_nonplanar_curve_prefix(self):
        # two points with differing z: K=1, M=1, planar=0, closed=0,
        # polynomial=1, periodic=0
        doc = ModelDocument().with_curve("seg", bezier_curve([(0, 0, 0), (1, 1, 1)]))
        text = write_iges(doc)
        pdata = "".join(l[:64].rstrip() for l in text.splitlines() if l[72] == "P")
        assert pdata.startswith("126,1,1,0,0,1,0,")

    def test_planar_curve_sets_planar_flag_and_normal(self):
        doc = ModelDocument().with_curve("seg", bezier_curve([(0, 0), (1, 1)]))
        text = write_iges(doc)
        pdata = "".join(l[:64].rstrip() for l in text.splitlines() if l[72] == "P")
        assert pdata.startswith("126,1,1,1,0,1,0,")
        record = pdata.split(";")[0].split(",")
        assert [float(x) for x in record[-3:]] == [0.0, 0.0, 1.0]

    def test_rational_curve_clears_polynomial_flag(self):
        doc = ModelDocument().with_curve("circle", make_circle_nurbs(Point(0, 0), 1.0))
        text = write_iges(doc)
        pdata = "".join(l[:64].rstrip() for l in text.splitlines() if l[72] == "P")
        assert pdata.startswith("126,8,2,1,1,0,0,")


class TestRoundTrip:
    def test_geometry_round_trip(self):
        doc = fixture_document()
        back, report = read_iges(write_iges(doc))
        assert report.imported == {126: 3, 128: 2}
        assert report.skipped == ()
        assert set(back.curves) == set(doc.curves)
        assert set(back.surfaces) == set(doc.surfaces)
        for name, curve in doc.curves.items():
            other = back.curves[name]
            assert other.degree == curve.degree
            assert len(other.control) == len(curve.control)
            assert np.abs(np.array(other.knots.knots) - np.array(curve.knots.knots)).max() < 1e-9
            for a, b in zip(curve.control, other.control):
                assert abs(a.weight - b.weight) < 1e-9
                assert np.abs(a.position.as_array() - b.position.as_array()).max() < 1e-9
        for name, surface in doc.surfaces.items():
            other = back.surfaces[name]
            assert other.shape == surface.shape
            assert (other.degree_u, other.degree_v) == (surface.degree_u, surface.degree_v)
            for row_a, row_b in zip(surface.net, other.net):
                for a, b in zip(row_a, row_b):
                    assert abs(a.weight - b.weight) < 1e-9
                    assert np.abs(a.position.as_array() - b.position.as_array()).max() < 1e-9

    def test_evaluation_equivalence_after_round_trip(self):
        doc = fixture_document()
        back, _ = read_iges(write_iges(doc))
        for name, curve in doc.curves.items():
            other = back.curves[name]
            lo, hi = curve.domain
            for t in np.linspace(lo, hi, 100):
                a = eval_nurbs(curve, float(t)).as_array()
                b = eval_nurbs(other, float(t)).as_array()
                assert np.abs(a - b).max() < 1e-9
        for name, surface in doc.surfaces.items():
            other = back.surfaces[name]
            for u in np.linspace(0, 1, 7):
                for v in np.linspace(0, 1, 7):
                    a = eval_surface(surface, float(u), float(v)).as_array()
                    b = eval_surface(other, float(u), float(v)).as_array()
                    assert np.abs(a - b).max() < 1e-9

    def test_names_survive_via_entity_labels(self):
        doc = ModelDocument().with_curve("ramp", bezier_curve([(0, 0), (1, 1)]))
        back, _ = read_iges(write_iges(doc))
        assert "ramp" in back.curves


def _line(body: str, letter: str, seq: int) -> str:
    return f"{body:<72}{letter}{seq:>7}"


def _minimal_file(entity_type=110, params="110,0.,0.,0.,1.,0.,0.;"):
    chunks = [params[i : i + 64] for i in range(0, len(params), 64)]
    plines = [
        f"{chunk:<64} {1:>7}P{seq:>7}" for seq, chunk in enumerate(chunks, start=1)
    ]
    lines = [
        _line("handcrafted test file", "S", 1),
        _line("1H,,1H;,4Htest,8Htest.igs,4Htest,5H0.1.0,32,38,6,308,15,4Htest,", "G", 1),
        _line("1.0,6,1HM,1,1.0,15H20240101.000000,1E-9,0.0,4Htest,4Htest,11,0,", "G", 2),
        _line("15H20240101.000000,4HNONE;", "G", 3),
        _line(f"{entity_type:>8}{1:>8}{0:>8}{0:>8}{0:>8}{0:>8}{0:>8}{0:>8}{'00000000':>8}", "D", 1),
        _line(f"{entity_type:>8}{0:>8}{0:>8}{len(chunks):>8}{0:>8}{'':8}{'':8}{'':>8}{0:>8}", "D", 2),
        *plines,
        _line(f"S{1:>7}G{3:>7}D{2:>7}P{len(chunks):>7}", "T", 1),
    ]
    return "\n".join(lines) + "\n"


class TestReaderTolerance:
    def test_unsupported_entity_is_skipped_and_reported(self):
        doc, report = read_iges(_minimal_file())
        assert not doc.curves and not doc.surfaces
        assert report.skipped == ((110, 0, "unsupported entity"),)

    def test_skipped_plus_imported_covers_every_entry(self):
        base = write_iges(ModelDocument().with_curve("c", bezier_curve([(0, 0), (1, 1)])))
        doc, report = read_iges(base)
        assert sum(report.imported.values()) + len(report.skipped) == 1

    def test_truncated_line_is_an_error(self):
        text = write_iges(ModelDocument().with_curve("c", bezier_curve([(0, 0), (1, 1)])))
        lines = text.splitlines()
        lines[-1] = lines[-1][:40]
        with pytest.raises(ParseError) as info:
            read_iges("\n".join(lines))
        assert info.value.line == len(lines)

    def test_bad_section_letter(self):
        text = write_iges(ModelDocument())
        lines = text.splitlines()
        lines[0] = lines[0][:72] + "X" + lines[0][73:]
        with pytest.raises(ParseError) as info:
            read_iges("\n".join(lines))
        assert info.value.line == 1

    def test_missing_terminate_section(self):
        text = write_iges(ModelDocument())
        lines = [l for l in text.splitlines() if l[72] != "T"]
        with pytest.raises(ParseError, match="terminate"):
            read_iges("\n".join(lines))

    def test_pointer_mismatch(self):
        text = write_iges(ModelDocument().with_curve("c", bezier_curve([(0, 0), (1, 1)])))
        lines = text.splitlines()
        for i, line in enumerate(lines):
            if line[72] == "D" and int(line[73:80]) == 1:
                lines[i] = f"{line[:8]}{99:>8}{line[16:]}"
                break
        with pytest.raises(ParseError, match="points at"):
            read_iges("\n".join(lines))

    def test_terminate_count_mismatch(self):
        text = write_iges(ModelDocument())
        lines = text.splitlines()
        tline = lines[-1]
        lines[-1] = _line(f"S{9:>7}G{4:>7}D{0:>7}P{0:>7}", "T", 1)
        with pytest.raises(ParseError):
            read_iges("\n".join(lines))

    def test_d_exponent_notation_is_accepted(self):
        params = (
            "126,1,1,1,0,1,0,0.0D0,0.0D0,1.0D0,1.0D0,1.0D0,1.0D0,"
            "0.0D0,0.0D0,0.0D0,2.5D0,1.0D0,0.0D0,0.0D0,1.0D0,0.0D0,0.0D0,1.0D0;"
        )
        doc, report = read_iges(_minimal_file(126, params))
        assert report.imported == {126: 1}
        (curve,) = doc.curves.values()
        assert curve.control[1].position == Point(2.5, 1.0, 0.0)

    def test_unclamped_import_is_skipped_with_reason(self):
        params = (
            "126,1,1,1,0,1,0,0.0,1.0,2.0,3.0,1.0,1.0,"
            "0.0,0.0,0.0,1.0,1.0,0.0,0.0,1.0,0.0,0.0,1.0;"
        )
        doc, report = read_iges(_minimal_file(126, params))
        assert not doc.curves
        assert len(report.skipped) == 1
        assert report.skipped[0][0] == 126
        assert "invalid geometry" in report.skipped[0][2]
