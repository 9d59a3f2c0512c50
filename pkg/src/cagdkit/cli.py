"""Command-line surface: construct, interrogate, exchange and render geometry.

Exit codes: 0 success, 1 processing error, 2 usage error.  Every successful
invocation prints a single machine-parsable summary line of the form
``<subcommand> ok key=value ...``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .curves import Point, SpiralSpec, make_circle_nurbs, make_cubic_spiral, subdivide_bezier, eval_bezier, eval_nurbs
from .errors import GeometryError, ParseError
from .interrogate import check_continuity, check_spiral, curvature_comb
from .iges import read_iges, write_iges
from .model import ModelDocument, read_model_json, write_model_json
from .surfaces import eval_surface, isolines, revolve
from .svg import SvgOptions, render_svg

DEFAULT_BIND = "127.0.0.1:8765"
BIND_ENV_VAR = "CAGDKIT_BIND"


def _parse_point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise GeometryError(f"expected x,y or x,y,z coordinates, got {text!r}")
    try:
        coords = [float(p) for p in parts]
    except ValueError:
        raise GeometryError(f"non-numeric coordinate in {text!r}") from None
    return Point(*coords)


def _parse_values(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise GeometryError(f"non-numeric value in {text!r}") from None


def _load_document(path: str) -> ModelDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return read_model_json(fh.read())


def _load_or_new(path: str | None) -> ModelDocument:
    return _load_document(path) if path else ModelDocument()


def _save_document(doc: ModelDocument, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_model_json(doc))


def _get_curve(doc: ModelDocument, name: str):
    if name not in doc.curves:
        raise GeometryError(f"no curve named {name!r} in document")
    return doc.curves[name]


def _get_surface(doc: ModelDocument, name: str):
    if name not in doc.surfaces:
        raise GeometryError(f"no surface named {name!r} in document")
    return doc.surfaces[name]


def _summary(stream, subcommand: str, **fields) -> int:
    pairs = " ".join(f"{k}={v}" for k, v in fields.items())
    print(f"{subcommand} ok {pairs}".rstrip(), file=stream)
    return 0


def _cmd_circle(args, out) -> int:
    doc = _load_or_new(args.infile)
    curve = make_circle_nurbs(_parse_point(args.center), args.radius)
    doc = doc.with_curve(args.name, curve)
    _save_document(doc, args.out)
    return _summary(out, "circle", name=args.name, controls=len(curve.control), out=args.out)


def _cmd_spiral(args, out) -> int:
    doc = _load_or_new(args.infile)
    spec = SpiralSpec(_parse_point(args.start), args.tangent, args.theta, args.kappa1)
    curve = make_cubic_spiral(spec)
    doc = doc.with_curve(args.name, curve)
    _save_document(doc, args.out)
    report = check_spiral(curve)
    return _summary(
        out,
        "spiral",
        name=args.name,
        kappaEnd=f"{report.kappa_end:.9g}",
        monotone=str(report.monotone).lower(),
        out=args.out,
    )


def _cmd_revolve(args, out) -> int:
    doc = _load_document(args.model)
    surface = revolve(_get_curve(doc, args.curve))
    doc = doc.with_surface(args.name, surface)
    _save_document(doc, args.out)
    nu, nv = surface.shape
    return _summary(out, "revolve", name=args.name, net=f"{nu}x{nv}", out=args.out)


def _cmd_eval(args, out) -> int:
    doc = _load_document(args.model)
    if args.curve is not None:
        curve = _get_curve(doc, args.curve)
        if args.t is None:
            raise GeometryError("--t is required when evaluating a curve")
        p = eval_bezier(curve, args.t) if curve.is_bezier else eval_nurbs(curve, args.t)
    elif args.surface is not None:
        if args.u is None or args.v is None:
            raise GeometryError("--u and --v are required when evaluating a surface")
        p = eval_surface(_get_surface(doc, args.surface), args.u, args.v)
    else:
        raise GeometryError("one of --curve or --surface is required")
    return _summary(out, "eval", x=f"{p.x!r}", y=f"{p.y!r}", z=f"{p.z!r}")


def _cmd_comb(args, out) -> int:
    doc = _load_document(args.model)
    curve = _get_curve(doc, args.curve)
    comb = curvature_comb(curve, args.samples, args.scale)
    scene_doc = ModelDocument(name=doc.name, curves={args.curve: curve})
    svg = render_svg(
        scene_doc,
        SvgOptions(
            combs=True,
            comb_samples=args.samples,
            comb_scale=comb.scale,
            control_polygons=not args.no_control_polygon,
        ),
    )
    with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return _summary(
        out, "comb", curve=args.curve, samples=len(comb.samples),
        scale=f"{comb.scale:.9g}", svg=args.svg,
    )


def _cmd_continuity(args, out) -> int:
    doc = _load_document(args.model)
    if args.curve is not None:
        curve = _get_curve(doc, args.curve)
        a, b = subdivide_bezier(curve, args.split)
    elif args.a is not None and args.b is not None:
        a = _get_curve(doc, args.a)
        b = _get_curve(doc, args.b)
    else:
        raise GeometryError("needs either --a and --b, or --curve with --split")
    report = check_continuity(a, b, args.tol_position, args.tol_angle, args.tol_curvature)
    return _summary(
        out,
        "continuity",
        level=report.level,
        positionGap=f"{report.position_gap:.3e}",
        tangentAngleGap=f"{report.tangent_angle_gap:.3e}",
        curvatureGap=f"{report.curvature_gap:.3e}",
    )


def _cmd_isolines(args, out) -> int:
    doc = _load_document(args.model)
    surface = _get_surface(doc, args.surface)
    values = _parse_values(args.values)
    lines = isolines(surface, args.dir, values)
    result = ModelDocument(name=f"{args.surface} isolines")
    for iso in lines:
        result = result.with_curve(f"{args.surface}_{iso.direction}_{iso.value:g}", iso.curve)
    if args.out:
        _save_document(result, args.out)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_svg(result, SvgOptions(control_polygons=False)))
    return _summary(
        out, "isolines", surface=args.surface, dir=args.dir, count=len(lines),
        **({"out": args.out} if args.out else {}),
        **({"svg": args.svg} if args.svg else {}),
    )


def _cmd_export_iges(args, out) -> int:
    doc = _load_document(args.model)
    text = write_iges(doc)
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return _summary(
        out, "export-iges", curves=len(doc.curves), surfaces=len(doc.surfaces), out=args.out
    )


def _cmd_import_iges(args, out) -> int:
    with open(args.iges, "r", encoding="ascii", errors="replace") as fh:
        doc, report = read_iges(fh.read())
    _save_document(doc, args.out)
    return _summary(
        out,
        "import-iges",
        curves=len(doc.curves),
        surfaces=len(doc.surfaces),
        skipped=len(report.skipped),
        out=args.out,
    )


def _cmd_serve(args, out) -> int:
    import uvicorn

    from .service import ModelStore, create_app

    doc = _load_or_new(args.model)
    host, _, port = args.bind.rpartition(":")
    app = create_app(ModelStore(doc))
    print(f"serve ok bind={args.bind}", file=out, flush=True)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cagdkit",
        description="Construct, interrogate, exchange and render CAGD geometry.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("circle", help="add an exact NURBS circle to a model")
    p.add_argument("--center", required=True, help="x,y[,z]")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--name", default="circle")
    p.add_argument("--in", dest="infile", default=None, help="extend an existing model")
    p.add_argument("--out", required=True, help="model JSON output path")
    p.set_defaults(func=_cmd_circle)

    p = sub.add_parser("spiral", help="add a cubic spiral (monotone curvature)")
    p.add_argument("--start", default="0,0", help="x,y[,z]")
    p.add_argument("--tangent", type=float, default=0.0, help="start tangent angle (rad)")
    p.add_argument("--theta", type=float, required=True, help="tangent turn angle (rad)")
    p.add_argument("--kappa1", type=float, required=True, help="end curvature")
    p.add_argument("--name", default="spiral")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_spiral)

    p = sub.add_parser("revolve", help="revolve an xz-plane profile about the z axis")
    p.add_argument("model")
    p.add_argument("--curve", required=True, help="profile curve name")
    p.add_argument("--name", default="revolution")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_revolve)

    p = sub.add_parser("eval", help="evaluate a curve or surface point")
    p.add_argument("model")
    p.add_argument("--curve")
    p.add_argument("--t", type=float)
    p.add_argument("--surface")
    p.add_argument("--u", type=float)
    p.add_argument("--v", type=float)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("comb", help="render a curvature comb (porcupine plot) as SVG")
    p.add_argument("model")
    p.add_argument("--curve", required=True)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--no-control-polygon", action="store_true")
    p.add_argument("--svg", required=True)
    p.set_defaults(func=_cmd_comb)

    p = sub.add_parser("continuity", help="classify a curve joint as NONE/G0/G1/G2")
    p.add_argument("model")
    p.add_argument("--a", help="first curve name (joint at its end)")
    p.add_argument("--b", help="second curve name (joint at its start)")
    p.add_argument("--curve", help="Bezier curve to subdivide and test against itself")
    p.add_argument("--split", type=float, default=0.5)
    p.add_argument("--tol-position", type=float, default=1e-9)
    p.add_argument("--tol-angle", type=float, default=1e-9)
    p.add_argument("--tol-curvature", type=float, default=1e-6)
    p.set_defaults(func=_cmd_continuity)

    p = sub.add_parser("isolines", help="extract Bezier-patch isolines")
    p.add_argument("model")
    p.add_argument("--surface", required=True)
    p.add_argument("--dir", choices=("u", "v"), required=True, help="fixed parameter")
    p.add_argument("--values", required=True, help="comma-separated parameters in [0,1]")
    p.add_argument("--out", help="write isoline curves as a model JSON")
    p.add_argument("--svg", help="render isolines as SVG")
    p.set_defaults(func=_cmd_isolines)

    p = sub.add_parser("export-iges", help="write the model as IGES 5.3")
    p.add_argument("model")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_iges)

    p = sub.add_parser("import-iges", help="read entities 126/128 from an IGES file")
    p.add_argument("iges")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_import_iges)

    p = sub.add_parser("serve", help="run the JSON-over-HTTP design service")
    p.add_argument(
        "--bind",
        default=os.environ.get(BIND_ENV_VAR, DEFAULT_BIND),
        help=f"host:port (default from ${BIND_ENV_VAR} or {DEFAULT_BIND})",
    )
    p.add_argument("--model", default=None, help="initial model JSON")
    p.set_defaults(func=_cmd_serve)

    return parser


def run_command(argv, out=None, err=None) -> int:
    """Parse and run one invocation; returns the process exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (GeometryError, ParseError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
