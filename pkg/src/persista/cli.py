"""Command line entry point: ``persista wrcf | vr | plot``.

Exit codes: 0 success, 1 bad input or usage, 2 internal invariant failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .estimators import VietorisRipsPersistence, WeightRankCliquePersistence
from .exceptions import InvariantError, PersistaError
from .io import (
    SvgOptions, parse_graph, parse_points, read_barcode, render_barcode_svg, write_barcode, write_barcode_csv,
)
from .wrcf import remove_edges


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _edge_pair(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}")
    return tuple(parts)


def _positive_int(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="persista", description="Persistent homology of weighted networks and point clouds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("wrcf", help="weight rank clique filtration of a graph file")
    w.add_argument("--input", required=True, type=Path)
    w.add_argument("--order", choices=("asc", "desc"), default="asc")
    w.add_argument("--max-dim", type=_positive_int, default=1)
    w.add_argument("--remove-edge", action="append", type=_edge_pair, default=[], metavar="A,B")
    w.add_argument("--start", type=float, default=None,
                   help="value of the all-vertices step (default: one unit before the first threshold)")
    _common(w)

    v = sub.add_parser("vr", help="Vietoris-Rips filtration of a points CSV")
    v.add_argument("--input", required=True, type=Path)
    v.add_argument("--metric", choices=("euclidean", "haversine"), default=None)
    v.add_argument("--eps-max", type=float, default=None)
    v.add_argument("--max-dim", type=_positive_int, default=1)
    v.add_argument("--split-vote", action="store_true")
    _common(v)

    p = sub.add_parser("plot", help="render a barcode document as SVG")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--output", required=True, type=Path)
    p.add_argument("--title", default="")
    return parser


def _common(p):
    p.add_argument("--reps", action="store_true", help="attach representative cycles")
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _serialize(b, fmt):
    return write_barcode(b) if fmt == "json" else write_barcode_csv(b)


def _emit(chunks, output):
    """Write ``[(suffix, bytes)]``; with a path each chunk gets its own file."""
    if output is None:
        out = getattr(sys.stdout, "buffer", None)
        for _, data in chunks:
            if out is None:
                sys.stdout.write(data.decode("utf-8"))
            else:
                out.write(data)
        sys.stdout.flush()
        return
    for suffix, data in chunks:
        path = output if not suffix else output.with_name(f"{output.stem}.{suffix}{output.suffix}")
        path.write_bytes(data)


def cmd_wrcf(args) -> int:
    g = parse_graph(args.input.read_bytes())
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = remove_edges(g, args.remove_edge)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    est = WeightRankCliquePersistence(order=args.order, max_dim=args.max_dim, start=args.start,
                                      representatives=args.reps)
    _emit([("", _serialize(est.fit_transform(g), args.format))], args.output)
    return 0


def cmd_vr(args) -> int:
    parsed = parse_points(args.input.read_bytes(), split_vote=args.split_vote)
    if args.split_vote:
        if not isinstance(parsed, tuple):
            raise PersistaError("--split-vote needs a 'vote' column")
        clouds = list(zip(("leave", "remain"), parsed))
    else:
        clouds = [("", parsed)]
    chunks = []
    for name, cloud in clouds:
        est = VietorisRipsPersistence(metric=args.metric, eps_max=args.eps_max, max_dim=args.max_dim,
                                      representatives=args.reps)
        chunks.append((name, _serialize(est.fit_transform(cloud), args.format)))
    _emit(chunks, args.output)
    return 0


def cmd_plot(args) -> int:
    b = read_barcode(args.input.read_bytes())
    args.output.write_bytes(render_barcode_svg(b, SvgOptions(title=args.title)))
    return 0


COMMANDS = {"wrcf": cmd_wrcf, "vr": cmd_vr, "plot": cmd_plot}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (PersistaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
