"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 bad input data, 3 degenerate cone,
4 unsupported cone. Output files are written to a temporary file and renamed,
so a failed run never leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .depth import cone_cdf_grid, cone_depth, tukey_depth, tukey_region_full
from .errors import DegenerateCone, EmptyFile, EmptyInput, OutOfRange, ParseError, UnsupportedCone
from .geometry import EPS, ORTHANT, ConeV, Polyhedron2
from .quantile import cone_quantile
from .sweep import DataSet

EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE, EXIT_UNSUPPORTED = 1, 2, 3, 4

DEFAULT_PLOT_LEVELS = (0.05, 0.275, 0.5, 0.725, 0.95)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def parse_csv(path) -> DataSet:
    """Read ``x,y`` rows. A first row with no numeric field is taken as a header."""
    with open(path, newline="") as fh:
        text = fh.read()
    points = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        fields = [f.strip() for f in row]
        if not any(fields):
            continue
        if lineno == 1 and not any(_is_number(f) for f in fields):
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=lineno)
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(f"not a number in {row!r}", line=lineno) from None
        if not (x == x and y == y and abs(x) != float("inf") and abs(y) != float("inf")):
            raise ParseError("coordinates must be finite", line=lineno)
        points.append((x, y))
    if not points:
        raise EmptyFile(f"{path}: no data rows")
    return DataSet(points)


def _floats(text: str, count: int, what: str) -> tuple:
    parts = text.split(",")
    if len(parts) != count:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise UsageError(f"{what}: not a number in {text!r}") from None


def parse_cone(text: str) -> ConeV:
    """``orthant`` or ``b1x,b1y;b2x,b2y``."""
    if text.strip().lower() == "orthant":
        return ORTHANT
    halves = text.split(";")
    if len(halves) != 2:
        raise UsageError(f"cone must be 'orthant' or 'b1x,b1y;b2x,b2y', got {text!r}")
    return ConeV(_floats(halves[0], 2, "--cone"), _floats(halves[1], 2, "--cone"))


def parse_levels(values) -> list:
    levels = []
    for v in values or []:
        for part in v.split(","):
            try:
                p = float(part)
            except ValueError:
                raise UsageError(f"-p: not a number: {part!r}") from None
            if not 0.0 < p <= 1.0:
                raise UsageError(f"-p: level {p} outside (0, 1]")
            levels.append(p)
    return sorted(levels)


def poly_json(poly: Polyhedron2) -> dict:
    return {
        "hrep": [{"w": list(h.w), "q": h.q} for h in poly.hrep],
        "vrep": {
            "vertices": [[v.x, v.y] for v in poly.vertices],
            "directions": [list(d) for d in poly.rec_dirs] if poly.rec_dirs else [],
        },
    }


def quantile_json(res) -> dict:
    out = {"p": res.p, "K": res.K}
    out.update(poly_json(res.poly))
    out["steps"] = res.rotation_steps
    return out


def _dumps(obj) -> str:
    # one object per line keeps the files diffable without spreading every pair over 4 lines
    if isinstance(obj, list):
        return "[\n" + ",\n".join(json.dumps(o) for o in obj) + "\n]\n"
    return json.dumps(obj) + "\n"


def write_output(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".conedepth-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            flag = {"p": "-p", "z": "-z"}.get(name, "--" + name)
            raise UsageError(f"{args.command} requires {flag}")


def _check_format(args, allowed):
    if args.format is None:
        args.format = allowed[0]
    if args.format not in allowed:
        raise UsageError(f"{args.command} supports --format {', '.join(allowed)}")


def _bounds(args, X: DataSet):
    if args.bounds is not None:
        b = _floats(args.bounds, 4, "--bounds")
        if b[0] > b[1] or b[2] > b[3]:
            raise UsageError("--bounds must be xmin,xmax,ymin,ymax with min <= max")
        return b
    lo, hi = X.xy.min(axis=0), X.xy.max(axis=0)
    return (float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))


def cmd_quantile(args, X, cone) -> str:
    _check_format(args, ["json"])
    _require(args, "p")
    res = [quantile_json(cone_quantile(X, cone, p, args.eps)[0]) for p in args.levels]
    return _dumps(res[0] if len(res) == 1 else res)


def cmd_cdf(args, X, cone) -> str:
    _check_format(args, ["json"])
    _require(args, "z")
    r = cone_depth(_floats(args.z, 2, "-z"), X, cone, args.eps)
    return _dumps({"K": r.K, "F": r.F, "argmin_w": list(r.argmin_w), "z_was_original": r.z_was_original, "n": r.n})


def cmd_depth(args, X, cone) -> str:
    _check_format(args, ["json"])
    _require(args, "z")
    return _dumps({"K": cone_depth(_floats(args.z, 2, "-z"), X, cone, args.eps).K})


def cmd_tukey_depth(args, X, cone) -> str:
    _check_format(args, ["json"])
    _require(args, "z")
    return _dumps({"depth": tukey_depth(_floats(args.z, 2, "-z"), X, args.eps)})


def cmd_tukey_region(args, X, cone) -> str:
    _check_format(args, ["json"])
    _require(args, "p")
    out = []
    for p in args.levels:
        r = tukey_region_full(X, p, args.eps)
        d = {"p": r.p, "K": r.K, "empty": r.poly.is_empty}
        d.update(poly_json(r.poly))
        d["steps"] = r.rotation_steps
        out.append(d)
    return _dumps(out[0] if len(out) == 1 else out)


def cmd_grid(args, X, cone) -> str:
    _check_format(args, ["csv", "json"])
    if args.nx < 1 or args.ny < 1:
        raise UsageError("--nx and --ny must be positive")
    pts, F = cone_cdf_grid(X, cone, _bounds(args, X), args.nx, args.ny, args.eps)
    if args.format == "json":
        return _dumps([{"x": float(x), "y": float(y), "F": float(f)} for (x, y), f in zip(pts, F)])
    lines = ["x,y,F"] + [f"{float(x)!r},{float(y)!r},{float(f)!r}" for (x, y), f in zip(pts, F)]
    return "\n".join(lines) + "\n"


def cmd_plot(args, X, cone) -> str:
    from .plot import render_svg

    _check_format(args, ["svg"])
    levels = args.levels or list(DEFAULT_PLOT_LEVELS)
    results = [cone_quantile(X, cone, p, args.eps)[0] for p in levels]
    labels = None
    if X.n <= 50:
        labels = [cone_depth(x, X, cone, args.eps).K for x in X]
    return render_svg(X, cone, results, labels)


COMMANDS = {
    "quantile": (cmd_quantile, "lower cone quantile(s) as H- and V-representation"),
    "cdf": (cmd_cdf, "cone location depth and distribution value at a point"),
    "depth": (cmd_depth, "cone location depth at a point"),
    "tukey-depth": (cmd_tukey_depth, "Tukey halfspace depth at a point"),
    "tukey-region": (cmd_tukey_region, "Tukey depth region(s)"),
    "grid": (cmd_grid, "distribution function on a rectangular grid"),
    "plot": (cmd_plot, "SVG of the data with layered quantiles"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conedepth", description="Cone location depth and cone quantiles for bivariate data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("-i", "--input", required=True, help="CSV file with x,y rows")
        sp.add_argument("--cone", default="orthant", help="'orthant' or 'b1x,b1y;b2x,b2y' (default: orthant)")
        sp.add_argument("-p", action="append", help="probability level(s), repeatable or comma-separated")
        sp.add_argument("-z", help="query point 'x,y'")
        sp.add_argument("--bounds", help="grid bounds 'xmin,xmax,ymin,ymax' (default: data bounding box)")
        sp.add_argument("--nx", type=int, default=50, help="grid columns (default 50)")
        sp.add_argument("--ny", type=int, default=50, help="grid rows (default 50)")
        sp.add_argument("--eps", type=float, default=EPS, help=f"tolerance on scalar products (default {EPS})")
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        sp.add_argument("--format", choices=["json", "csv", "svg"])
    return parser


_VALUE_FLAGS = ("-z", "--bounds", "--cone", "-p", "--eps")


def _glue_negative_values(argv: list) -> list:
    """Turn ``-z -1,2`` into ``-z=-1,2`` so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1:
            nxt = argv[i + 1]
            if nxt[1].isdigit() or nxt[1] == ".":
                out.append(f"{tok}={nxt}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        if not args.eps >= 0.0:
            raise UsageError("--eps must be nonnegative")
        args.levels = parse_levels(args.p)
        cone = parse_cone(args.cone)
        X = parse_csv(args.input)
        text = COMMANDS[args.command][0](args, X, cone)
        write_output(text, args.output)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"conedepth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateCone as exc:
        print(f"conedepth: degenerate cone: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except UnsupportedCone as exc:
        print(f"conedepth: unsupported cone: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ParseError, EmptyInput, OutOfRange, OSError, ValueError) as exc:
        print(f"conedepth: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
