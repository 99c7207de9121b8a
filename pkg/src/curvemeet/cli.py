"""Command-line front end: intersect, parity and render subcommands.

Input curves arrive as a small JSON document holding two path
descriptors; all coordinates are exact rationals written as integers or
"p/q" strings.  Certificates are emitted as JSON with the same rational
encoding so that emitting and re-parsing loses nothing.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import EffortExhausted, EndpointViolation, SpecFileError
from .exact_geom import Interval, interval, pow2, pt, rat, smallest_n_below
from .parity import certify_alpha, function_parity
from .paths import (
    PathOracle,
    PolylinePath,
    QuadBezierPath,
    Side,
    TablePath,
    extend,
)
from .refine import (
    Certificate,
    RefinementRecord,
    refine_sequence,
    verify_certificate,
)

_EXTENDED = interval(-1, 2)
_CERT_FORMAT = "curvemeet-certificate"


# ---------------------------------------------------------------- parsing


def _rat_value(value) -> Fraction:
    """Rational from the JSON encodings: integer or 'p/q' string."""
    if isinstance(value, bool):
        raise SpecFileError("booleans are not rational values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise SpecFileError(
        f"rationals must be integers or 'p/q' strings, got {value!r}"
    )


def _point_row(row) -> tuple[Fraction, Fraction]:
    if not isinstance(row, list) or len(row) != 2:
        raise SpecFileError(f"expected an [x, y] pair, got {row!r}")
    return _rat_value(row[0]), _rat_value(row[1])


def _sample_row(row) -> tuple[Fraction, tuple[Fraction, Fraction]]:
    if not isinstance(row, list) or len(row) != 3:
        raise SpecFileError(f"expected a [t, x, y] triple, got {row!r}")
    return _rat_value(row[0]), (_rat_value(row[1]), _rat_value(row[2]))


def _build_path(node) -> PathOracle:
    if not isinstance(node, dict) or "type" not in node:
        raise SpecFileError("each path descriptor needs a 'type' field")
    kind = node["type"]
    data = node.get("data")
    if not isinstance(data, list):
        raise SpecFileError("each path descriptor needs a 'data' array")
    if kind == "polyline":
        return PolylinePath([_sample_row(r) for r in data])
    if kind == "quad_bezier":
        if len(data) != 3:
            raise SpecFileError("a quadratic Bezier needs 3 control points")
        points = [_point_row(r) for r in data]
        return QuadBezierPath(*(pt(x, y) for x, y in points))
    if kind == "table":
        if "modulus" not in node or not isinstance(node["modulus"], int):
            raise SpecFileError("a table path needs an integer 'modulus' offset")
        path = TablePath(
            [_sample_row(r) for r in data], modulus_offset=node["modulus"]
        )
        path.validate()
        return path
    raise SpecFileError(f"unknown path type {kind!r}")


def parse_path_spec(text: str) -> tuple[PathOracle, PathOracle]:
    """Two path oracles from the JSON document {"phi": ..., "psi": ...}."""
    try:
        data = json.loads(text)
        if not isinstance(data, dict):
            raise SpecFileError("the path spec must be a JSON object")
        if "phi" not in data or "psi" not in data:
            raise SpecFileError("the path spec needs 'phi' and 'psi' entries")
        return _build_path(data["phi"]), _build_path(data["psi"])
    except SpecFileError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise SpecFileError(f"invalid path spec: {exc}") from exc


def load_path_spec(path: str) -> tuple[PathOracle, PathOracle, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    phi, psi = parse_path_spec(raw.decode("utf-8", errors="replace"))
    return phi, psi, raw


# ------------------------------------------------- certificate (de)coding


def emit_certificate(cert: Certificate, meta: dict) -> str:
    """Deterministic JSON encoding; identical certificates and metadata
    yield byte-identical text."""
    obj = {
        "meta": meta,
        "records": [
            {
                "m": rec.m,
                "I": [str(rec.i.lo), str(rec.i.hi)],
                "J": [str(rec.j.lo), str(rec.j.hi)],
                "radius": str(pow2(-rec.m)),
            }
            for rec in cert.records
        ],
        "s_phi": [str(cert.s_phi.lo), str(cert.s_phi.hi)],
        "s_psi": [str(cert.s_psi.lo), str(cert.s_psi.hi)],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _interval_from(value) -> Interval:
    if not isinstance(value, list) or len(value) != 2:
        raise SpecFileError(f"expected an interval [lo, hi], got {value!r}")
    return Interval(_rat_value(value[0]), _rat_value(value[1]))


def parse_certificate(text: str) -> tuple[Certificate, dict]:
    """Inverse of emit_certificate; validates radii and nesting."""
    try:
        data = json.loads(text)
        records = []
        for entry in data["records"]:
            m = entry["m"]
            if not isinstance(m, int) or isinstance(m, bool):
                raise SpecFileError("record levels must be integers")
            if _rat_value(entry["radius"]) != pow2(-m):
                raise SpecFileError(f"record {m} carries the wrong radius")
            records.append(
                RefinementRecord(
                    m, _interval_from(entry["I"]), _interval_from(entry["J"])
                )
            )
        cert = Certificate(
            tuple(records),
            _interval_from(data["s_phi"]),
            _interval_from(data["s_psi"]),
        )
        meta = data.get("meta", {})
        if not isinstance(meta, dict):
            raise SpecFileError("certificate metadata must be an object")
        return cert, meta
    except SpecFileError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise SpecFileError(f"invalid certificate: {exc}") from exc


# -------------------------------------------------------------- rendering


def _fmt(x: Fraction) -> str:
    return f"{float(x):.6f}"


def _curve_coords(curve: PathOracle, iv: Interval, count: int) -> list[str]:
    step = iv.width() / count
    coords = []
    for k in range(count + 1):
        z = curve.eval_approx(iv.lo + k * step, 12)
        coords.append(f"{_fmt(z.x)},{_fmt(z.y)}")
    return coords


def render_svg(
    phi: PathOracle, psi: PathOracle, cert: Certificate | None
) -> str:
    """SVG picture of both extended curves over [-1, 2], the unit square,
    and (with a certificate) the images of the final interval pair."""
    f = extend(phi, Side.LOWER)
    g = extend(psi, Side.UPPER)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-1.2 -2.2 3.4 3.4">',
        '<g transform="scale(1,-1)" fill="none">',
        '<rect x="0" y="0" width="1" height="1" stroke="#999999" '
        'stroke-width="0.008"/>',
        f'<path stroke="#1f5fbf" stroke-width="0.016" '
        f'd="M {" L ".join(_curve_coords(f, _EXTENDED, 256))}"/>',
        f'<path stroke="#bf4f1f" stroke-width="0.016" '
        f'd="M {" L ".join(_curve_coords(g, _EXTENDED, 256))}"/>',
    ]
    if cert is not None:
        final = cert.final
        lines.append(
            '<g id="highlight" stroke-width="0.04" stroke-linecap="round">'
        )
        lines.append(
            f'<polyline stroke="#00a040" '
            f'points="{" ".join(_curve_coords(f, final.i, 32))}"/>'
        )
        lines.append(
            f'<polyline stroke="#a000a0" '
            f'points="{" ".join(_curve_coords(g, final.j, 32))}"/>'
        )
        lines.append("</g>")
    lines.extend(["</g>", "</svg>", ""])
    return "\n".join(lines)


# ------------------------------------------------------------ subcommands


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_intersect(args: argparse.Namespace) -> int:
    phi, psi, raw = load_path_spec(args.spec)
    cert = refine_sequence(
        phi,
        psi,
        args.iterations,
        effort=args.effort,
        verify_base_parity=args.verify_base_parity,
    )
    if args.verify_postconditions:
        verify_certificate(cert, phi, psi)
    meta = {
        "format": _CERT_FORMAT,
        "version": __version__,
        "input_sha256": hashlib.sha256(raw).hexdigest(),
        "iterations": args.iterations,
        "verified_base_parity": bool(args.verify_base_parity),
        "verified_postconditions": bool(args.verify_postconditions),
    }
    _write_output(args.output, emit_certificate(cert, meta))
    if args.emit_svg:
        _write_output(args.emit_svg, render_svg(phi, psi, cert))
    return 0


def _cli_interval(bounds: list[str] | None) -> Interval:
    if bounds is None:
        return _EXTENDED
    return Interval(rat(bounds[0]), rat(bounds[1]))


def _cmd_parity(args: argparse.Namespace) -> int:
    phi, psi, _ = load_path_spec(args.spec)
    f = extend(phi, Side.LOWER)
    g = extend(psi, Side.UPPER)
    try:
        i = _cli_interval(args.first_interval)
        j = _cli_interval(args.second_interval)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFileError(f"invalid interval bound: {exc}") from exc
    enc = certify_alpha(f, g, i, j, effort=args.effort)
    n = smallest_n_below(enc.lo / 16)
    parity = function_parity(f, g, i, j, effort=args.effort, n=n)
    print(f"parity {parity}")
    print(
        f"alpha in [{enc.lo}, {enc.hi}]"
        f" (measured at precision {enc.precision_used}, working precision {n})"
    )
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    phi, psi, _ = load_path_spec(args.spec)
    cert = None
    if args.certificate is not None:
        try:
            text = Path(args.certificate).read_text(encoding="utf-8")
        except OSError as exc:
            raise SpecFileError(
                f"cannot read {args.certificate}: {exc}"
            ) from exc
        cert, _meta = parse_certificate(text)
    _write_output(args.output, render_svg(phi, psi, cert))
    return 0


class _Parser(argparse.ArgumentParser):
    # interval bounds may be negative rationals like -1/2; teach the
    # option tokenizer to treat them as values rather than flags
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(
            r"^-\d+(/\d+)?$|^-\d*\.\d+$"
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="curvemeet",
        description=(
            "Certified intersection of two corner-to-corner unit-square"
            " curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("spec", help="path spec JSON file")
        p.add_argument(
            "--effort",
            type=int,
            default=64,
            help="maximum working precision for clearance search (default 64)",
        )

    p_int = sub.add_parser(
        "intersect", help="refine nested intervals around a crossing"
    )
    common(p_int)
    p_int.add_argument(
        "--iterations",
        type=int,
        default=16,
        help="number of refinement rounds (default 16)",
    )
    p_int.add_argument(
        "--verify-base-parity",
        action="store_true",
        help="recompute the full-domain parity instead of trusting it",
    )
    p_int.add_argument(
        "--verify-postconditions",
        action="store_true",
        help="recheck the neighborhood chain by dense sampling",
    )
    p_int.add_argument(
        "--emit-svg", metavar="PATH", help="also write an SVG rendering"
    )
    p_int.add_argument(
        "-o", "--output", default="-", help="certificate file (default stdout)"
    )
    p_int.set_defaults(func=_cmd_intersect)

    p_par = sub.add_parser(
        "parity", help="crossing parity of the extended curves on a window"
    )
    common(p_par)
    p_par.add_argument(
        "-I",
        "--first-interval",
        nargs=2,
        metavar=("LO", "HI"),
        help="parameter window for the first curve (default -1 2)",
    )
    p_par.add_argument(
        "-J",
        "--second-interval",
        nargs=2,
        metavar=("LO", "HI"),
        help="parameter window for the second curve (default -1 2)",
    )
    p_par.set_defaults(func=_cmd_parity)

    p_ren = sub.add_parser("render", help="draw the curves as SVG")
    common(p_ren)
    p_ren.add_argument(
        "--certificate", metavar="PATH", help="highlight this certificate's final intervals"
    )
    p_ren.add_argument(
        "-o", "--output", default="-", help="SVG file (default stdout)"
    )
    p_ren.set_defaults(func=_cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EndpointViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EffortExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
