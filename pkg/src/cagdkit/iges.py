"""Column-exact IGES 5.3 subset: rational B-spline curves (126) and surfaces (128).

Writer emits fixed 80-column lines, the five sections S, G, D, P, T with
section-local 1-based sequence numbers in columns 74-80 and the section
letter in column 73.  Reals are written with 17 significant digits so a
write/read round trip reproduces every double exactly.  Reader skips
unsupported entity types (reported, never fatal) and tolerates trailing
blank padding and parameters split across P lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import ControlPoint, KnotVector, Point, RationalCurve
from .errors import GeometryError, ParseError
from .model import ModelDocument
from .surfaces import RationalSurface

__all__ = ["IgesDocument", "ImportReport", "write_iges", "read_iges"]

_PARAM_WIDTH = 64  # data portion of a P line; back-pointer in cols 66-72

# Fixed provenance strings keep exports byte-deterministic.
_SYSTEM_ID = "cagdkit"
_FILE_STAMP = "20240101.000000"


@dataclass(frozen=True)
class IgesDocument:
    """Structured image of the five sections of one IGES file."""

    start_lines: tuple[str, ...]
    global_params: tuple[str, ...]
    directory_entries: tuple[tuple[str, str], ...]  # two 80-char lines each
    parameter_records: tuple[str, ...]
    terminate_line: str

    def text(self) -> str:
        lines = list(self.start_lines) + list(self.global_params)
        for first, second in self.directory_entries:
            lines.extend((first, second))
        lines.extend(self.parameter_records)
        lines.append(self.terminate_line)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ImportReport:
    """What an IGES import produced, accounting for every directory entry."""

    imported: dict[int, int] = field(default_factory=dict)
    skipped: tuple[tuple[int, int, str], ...] = ()  # (entity type, D index, reason)


def _hollerith(s: str) -> str:
    return f"{len(s)}H{s}"


def _real(x: float) -> str:
    return f"{x:.16E}"


def _fixed(body: str, letter: str, seq: int) -> str:
    assert len(body) <= 72
    return f"{body:<72}{letter}{seq:>7}"


def _wrap_section(text: str, letter: str) -> list[str]:
    lines = []
    for i in range(0, max(len(text), 1), 72):
        lines.append(_fixed(text[i : i + 72], letter, len(lines) + 1))
    return lines


def _pack_params(tokens: list[str]) -> list[str]:
    """Join tokens with ',' ending in ';', split into <=64-char chunks."""
    stream = ",".join(tokens) + ";"
    pieces = stream.split(",")
    chunks: list[str] = []
    current = ""
    for i, piece in enumerate(pieces):
        token = piece + ("," if i < len(pieces) - 1 else "")
        if current and len(current) + len(token) > _PARAM_WIDTH:
            chunks.append(current)
            current = token
        else:
            current += token
    if current:
        chunks.append(current)
    return chunks


def _curve_params(curve: RationalCurve) -> tuple[list[str], int]:
    """Entity 126 parameter tokens and the planar flag."""
    k = len(curve.control) - 1
    m = curve.degree
    planar = 1 if curve.is_planar else 0
    closed = 1 if curve.control[0].position == curve.control[-1].position else 0
    weights = [cp.weight for cp in curve.control]
    polynomial = 1 if all(w == weights[0] for w in weights) else 0
    tokens = ["126", str(k), str(m), str(planar), str(closed), str(polynomial), "0"]
    tokens += [_real(t) for t in curve.knots.knots]
    tokens += [_real(w) for w in weights]
    for cp in curve.control:
        p = cp.position
        tokens += [_real(p.x), _real(p.y), _real(p.z)]
    lo, hi = curve.domain
    tokens += [_real(lo), _real(hi)]
    tokens += [_real(0.0), _real(0.0), _real(1.0 if planar else 0.0)]
    return tokens, planar


def _surface_params(surface: RationalSurface) -> list[str]:
    """Entity 128 parameter tokens; u index runs fastest in the grids."""
    nu, nv = surface.shape
    k1, k2 = nu - 1, nv - 1
    closed_u = 1 if surface.net[0] == surface.net[-1] else 0
    closed_v = 1 if all(row[0] == row[-1] for row in surface.net) else 0
    weights = [cp.weight for row in surface.net for cp in row]
    polynomial = 1 if all(w == weights[0] for w in weights) else 0
    tokens = [
        "128",
        str(k1),
        str(k2),
        str(surface.degree_u),
        str(surface.degree_v),
        str(closed_u),
        str(closed_v),
        str(polynomial),
        "0",
        "0",
    ]
    tokens += [_real(t) for t in surface.knots_u.knots]
    tokens += [_real(t) for t in surface.knots_v.knots]
    for j in range(nv):
        for i in range(nu):
            tokens.append(_real(surface.net[i][j].weight))
    for j in range(nv):
        for i in range(nu):
            p = surface.net[i][j].position
            tokens += [_real(p.x), _real(p.y), _real(p.z)]
    (ulo, uhi), (vlo, vhi) = surface.domain_u, surface.domain_v
    tokens += [_real(ulo), _real(uhi), _real(vlo), _real(vhi)]
    return tokens


def _directory_pair(
    etype: int, pd_pointer: int, line_count: int, seq: int, label: str
) -> tuple[str, str]:
    first = (
        f"{etype:>8}{pd_pointer:>8}{0:>8}{0:>8}{0:>8}{0:>8}{0:>8}{0:>8}"
        f"{'00000000':>8}D{seq:>7}"
    )
    second = (
        f"{etype:>8}{0:>8}{0:>8}{line_count:>8}{0:>8}{'':8}{'':8}"
        f"{label[:8]:>8}{0:>8}D{seq + 1:>7}"
    )
    return first, second


def build_iges(doc: ModelDocument) -> IgesDocument:
    """Assemble the section image for a model document."""
    start = _wrap_section(f"{_SYSTEM_ID} IGES 5.3 export of model {doc.name!r}"[:72], "S")

    gtokens = [
        _hollerith(","),
        _hollerith(";"),
        _hollerith(doc.name),
        _hollerith(f"{doc.name or 'model'}.igs"),
        _hollerith(_SYSTEM_ID),
        _hollerith("0.1.0"),
        "32",
        "38",
        "6",
        "308",
        "15",
        _hollerith(doc.name),
        "1.0",
        "6",
        _hollerith("M"),
        "1",
        "1.0",
        _hollerith(_FILE_STAMP),
        _real(1e-9),
        "0.0",
        _hollerith(_SYSTEM_ID),
        _hollerith(_SYSTEM_ID),
        "11",
        "0",
        _hollerith(_FILE_STAMP),
        _hollerith("NONE"),
    ]
    glines = _wrap_section(",".join(gtokens) + ";", "G")

    entities: list[tuple[int, str, list[str]]] = []
    for name, curve in doc.curves.items():
        tokens, _ = _curve_params(curve)
        entities.append((126, name, tokens))
    for name, surface in doc.surfaces.items():
        entities.append((128, name, _surface_params(surface)))

    directory: list[tuple[str, str]] = []
    plines: list[str] = []
    for i, (etype, name, tokens) in enumerate(entities):
        de_seq = 2 * i + 1
        chunks = _pack_params(tokens)
        pd_pointer = len(plines) + 1
        directory.append(_directory_pair(etype, pd_pointer, len(chunks), de_seq, name))
        for chunk in chunks:
            plines.append(f"{chunk:<64} {de_seq:>7}P{len(plines) + 1:>7}")

    terminate = _fixed(
        f"S{len(start):>7}G{len(glines):>7}D{2 * len(directory):>7}P{len(plines):>7}",
        "T",
        1,
    )
    return IgesDocument(tuple(start), tuple(glines), tuple(directory), tuple(plines), terminate)


def write_iges(doc: ModelDocument) -> str:
    """Serialize a model document as IGES 5.3 text (every line 80 chars)."""
    return build_iges(doc).text()


# ---------------------------------------------------------------------------
# Reader


def _to_number(token: str, line_hint: int | None = None) -> float:
    token = token.strip().upper().replace("D", "E")
    if not token:
        return 0.0
    try:
        return float(token)
    except ValueError as exc:
        raise ParseError(f"bad numeric token {token!r}", line=line_hint) from exc


def _split_sections(text: str) -> dict[str, list[tuple[int, str]]]:
    """Group (line number, 80-char padded body) by section letter."""
    sections: dict[str, list[tuple[int, str]]] = {c: [] for c in "SGDPT"}
    order = "SGDPT"
    reached = 0
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ParseError("empty IGES file")
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        if len(raw) < 73:
            raise ParseError("truncated line (no section letter in column 73)", line=lineno)
        if len(raw) > 80:
            raw = raw[:80]
        letter = raw[72]
        if letter not in sections:
            raise ParseError(f"invalid section letter {letter!r} in column 73", line=lineno)
        idx = order.index(letter)
        if idx < reached:
            raise ParseError(f"section {letter} after section {order[reached]}", line=lineno)
        reached = idx
        sections[letter].append((lineno, f"{raw:<80}"))
    if not sections["T"]:
        raise ParseError("missing terminate (T) section", line=len(lines))
    return sections


def _check_terminate(sections: dict[str, list[tuple[int, str]]]):
    lineno, body = sections["T"][0]
    counts = {}
    text = body[:72]
    pos = 0
    while pos + 8 <= len(text):
        letter = text[pos]
        if letter == " ":
            break
        counts[letter] = int(text[pos + 1 : pos + 8])
        pos += 8
    for letter in "SGDP":
        expected = counts.get(letter)
        if expected is not None and expected != len(sections[letter]):
            raise ParseError(
                f"terminate section records {expected} {letter} lines, found {len(sections[letter])}",
                line=lineno,
            )


def _parse_int_field(body: str, start: int, end: int, lineno: int) -> int:
    token = body[start:end].strip()
    if not token:
        return 0
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"bad integer field {token!r}", line=lineno) from exc


def _curve_from_params(values: list[float]) -> RationalCurve:
    k = int(values[1])
    m = int(values[2])
    idx = 7
    knots = values[idx : idx + k + m + 2]
    idx += k + m + 2
    weights = values[idx : idx + k + 1]
    idx += k + 1
    coords = values[idx : idx + 3 * (k + 1)]
    idx += 3 * (k + 1)
    if len(coords) < 3 * (k + 1) or len(weights) < k + 1 or len(knots) < k + m + 2:
        raise ParseError("truncated entity 126 parameter data")
    control = tuple(
        ControlPoint(Point(coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]), weights[i])
        for i in range(k + 1)
    )
    return RationalCurve(control, KnotVector(tuple(knots), m), m)


def _surface_from_params(values: list[float]) -> RationalSurface:
    k1, k2 = int(values[1]), int(values[2])
    m1, m2 = int(values[3]), int(values[4])
    nu, nv = k1 + 1, k2 + 1
    idx = 10
    knots_u = values[idx : idx + k1 + m1 + 2]
    idx += k1 + m1 + 2
    knots_v = values[idx : idx + k2 + m2 + 2]
    idx += k2 + m2 + 2
    weights = values[idx : idx + nu * nv]
    idx += nu * nv
    coords = values[idx : idx + 3 * nu * nv]
    if len(coords) < 3 * nu * nv or len(weights) < nu * nv:
        raise ParseError("truncated entity 128 parameter data")
    net = []
    for i in range(nu):
        row = []
        for j in range(nv):
            flat = j * nu + i  # u index runs fastest
            row.append(
                ControlPoint(
                    Point(coords[3 * flat], coords[3 * flat + 1], coords[3 * flat + 2]),
                    weights[flat],
                )
            )
        net.append(tuple(row))
    return RationalSurface(
        tuple(net), KnotVector(tuple(knots_u), m1), KnotVector(tuple(knots_v), m2), m1, m2
    )


def _unique_name(base: str, taken) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def read_iges(text: str) -> tuple[ModelDocument, ImportReport]:
    """Parse entities 126/128 into a model; skip everything else, reported.

    Raises ParseError (with a line number) only for structurally broken
    files: bad column 73, missing terminate section, D/P pointer mismatch.
    """
    sections = _split_sections(text)
    _check_terminate(sections)

    dlines = sections["D"]
    if len(dlines) % 2 != 0:
        raise ParseError("directory section has an odd number of lines", line=dlines[-1][0])

    # Parameter data grouped by the directory back-pointer in columns 66-72.
    pdata: dict[int, str] = {}
    pstart: dict[int, int] = {}
    plinenos: dict[int, int] = {}
    for pseq, (lineno, body) in enumerate(sections["P"], start=1):
        de = _parse_int_field(body, 65, 72, lineno)
        if de not in pdata:
            pdata[de] = ""
            pstart[de] = pseq
            plinenos[de] = lineno
        pdata[de] += body[:64].rstrip()

    curves: dict[str, RationalCurve] = {}
    surfaces: dict[str, RationalSurface] = {}
    imported: dict[int, int] = {}
    skipped: list[tuple[int, int, str]] = []

    for index in range(len(dlines) // 2):
        first_lineno, first = dlines[2 * index]
        _, second = dlines[2 * index + 1]
        etype = _parse_int_field(first, 0, 8, first_lineno)
        pd_pointer = _parse_int_field(first, 8, 16, first_lineno)
        de_seq = 2 * index + 1
        label = second[56:64].strip()

        if etype not in (126, 128):
            skipped.append((etype, index, "unsupported entity"))
            continue
        if de_seq not in pdata:
            raise ParseError(
                f"directory entry {de_seq} has no parameter data", line=first_lineno
            )
        if pstart[de_seq] != pd_pointer:
            raise ParseError(
                f"directory entry {de_seq} points at P line {pd_pointer}, "
                f"data starts at {pstart[de_seq]}",
                line=first_lineno,
            )
        record = pdata[de_seq].split(";")[0]
        values = [_to_number(tok, plinenos[de_seq]) for tok in record.split(",")]
        if not values or int(values[0]) != etype:
            raise ParseError(
                f"parameter data for entry {de_seq} starts with {values[:1]}, expected {etype}",
                line=plinenos[de_seq],
            )
        try:
            if etype == 126:
                name = _unique_name(label or f"curve_{index + 1}", curves)
                curves[name] = _curve_from_params(values)
            else:
                name = _unique_name(label or f"surface_{index + 1}", surfaces)
                surfaces[name] = _surface_from_params(values)
        except (GeometryError, ParseError, IndexError) as exc:
            skipped.append((etype, index, f"invalid geometry: {exc}"))
            continue
        imported[etype] = imported.get(etype, 0) + 1

    doc = ModelDocument(curves=curves, surfaces=surfaces)
    return doc, ImportReport(imported, tuple(skipped))
