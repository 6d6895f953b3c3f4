"""Input parsers, barcode serialization and SVG rendering."""
from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import jsonschema
import numpy as np

from .exceptions import ParseError
from .persistence import Bar, Barcode
from .vr import PointCloud
from .wrcf import WeightedGraph

VALUE_KINDS = ("year", "distance_km", "euclidean")
VOTES = ("leave", "remain")


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 ({exc.reason})", f"byte {exc.start}") from None
    return data


def _finite(token: str, location: str, what: str) -> float:
    try:
        x = float(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not a number", location) from None
    if not math.isfinite(x):
        raise ParseError(f"{what} {token!r} is not finite", location)
    return x


# -- graph files -------------------------------------------------------------------

def parse_graph(data) -> WeightedGraph:
    """Parse the line-oriented graph format.

    ::

        # comment
        node 0 France
        node 1 Germany
        edge France Germany 1957
    """
    nodes: dict[int, str] = {}
    label_line: dict[str, int] = {}
    raw_edges = []
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        parts = line.split()
        kind = parts[0]
        if kind == "node":
            if len(parts) != 3:
                raise ParseError("expected 'node <id> <label>'", where)
            try:
                vid = int(parts[1])
            except ValueError:
                raise ParseError(f"node id {parts[1]!r} is not an integer", where) from None
            if vid < 0:
                raise ParseError(f"node id {vid} is negative", where)
            if vid in nodes:
                raise ParseError(f"duplicate node id {vid}", where)
            label = parts[2]
            if label in label_line:
                raise ParseError(f"duplicate label {label!r} (first declared on line {label_line[label]})", where)
            nodes[vid] = label
            label_line[label] = lineno
        elif kind == "edge":
            if len(parts) != 4:
                raise ParseError("expected 'edge <label_a> <label_b> <weight>'", where)
            raw_edges.append((lineno, parts[1], parts[2], _finite(parts[3], where, "weight")))
        else:
            raise ParseError(f"unknown record type {kind!r}", where)

    if sorted(nodes) != list(range(len(nodes))):
        raise ParseError("node ids must be exactly 0..n-1")
    labels = tuple(nodes[i] for i in range(len(nodes)))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = {}
    for lineno, a, b, w in raw_edges:
        where = f"line {lineno}"
        for lab in (a, b):
            if lab not in index:
                raise ParseError(f"edge references undeclared node {lab!r}", where)
        if a == b:
            raise ParseError(f"self-loop on {a!r}", where)
        key = tuple(sorted((index[a], index[b])))
        if key in edges:
            raise ParseError(f"duplicate edge {a}-{b}", where)
        edges[key] = w
    return WeightedGraph(labels, edges)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"node {i} {lab}" for i, lab in enumerate(g.labels)]
    lines += [f"edge {g.labels[a]} {g.labels[b]} {_num(w)}" for (a, b), w in g.edges.items()]
    return "\n".join(lines) + "\n"


# -- point files -------------------------------------------------------------------

def parse_points(data, split_vote: bool = True):
    """Parse a points CSV into a :class:`PointCloud`.

    Returns ``(leave, remain)`` clouds when a ``vote`` column is present,
    unless ``split_vote`` is false (the vote is then validated but pooled).
    """
    reader = csv.DictReader(_io.StringIO(_text(data)))
    header = reader.fieldnames
    if not header:
        raise ParseError("missing header", "row 0")
    header = [h.strip() for h in header]
    reader.fieldnames = header
    for col in ("id", "label"):
        if col not in header:
            raise ParseError(f"missing required column {col!r}", "row 0")
    planar = "x" in header and "y" in header
    geographic = "lat" in header and "lon" in header
    if planar == geographic:
        raise ParseError("need exactly one coordinate pair: x,y or lat,lon", "row 0")
    cols = ("lat", "lon") if geographic else ("x", "y")
    has_vote = "vote" in header

    ids, labels, coords, votes = set(), [], [], []
    for rowno, row in enumerate(reader, start=1):
        where = f"row {rowno}"
        if None in row or any(row[h] is None for h in header):
            raise ParseError("wrong number of fields", where)
        rid = row["id"].strip()
        if rid in ids:
            raise ParseError(f"duplicate id {rid!r}", where)
        ids.add(rid)
        xy = [_finite(row[c].strip(), where, c) for c in cols]
        if geographic:
            if not -90 <= xy[0] <= 90:
                raise ParseError(f"latitude {xy[0]} outside [-90, 90]", where)
            if not -180 <= xy[1] <= 180:
                raise ParseError(f"longitude {xy[1]} outside [-180, 180]", where)
        if has_vote:
            vote = row["vote"].strip()
            if vote not in VOTES:
                raise ParseError(f"vote {vote!r} must be one of {'|'.join(VOTES)}", where)
            votes.append(vote)
        labels.append(row["label"].strip())
        coords.append(xy)

    X = np.array(coords, dtype=float).reshape(-1, 2)
    if not (has_vote and split_vote):
        return PointCloud(X, tuple(labels), geographic)
    clouds = []
    for vote in VOTES:
        keep = [i for i, v in enumerate(votes) if v == vote]
        clouds.append(PointCloud(X[keep].reshape(-1, 2), tuple(labels[i] for i in keep), geographic))
    return tuple(clouds)


# -- barcode documents -----------------------------------------------------------------

BARCODE_SCHEMA = {
    "type": "object",
    "required": ["max_dim", "value_kind", "bars"],
    "additionalProperties": False,
    "properties": {
        "max_dim": {"type": "integer", "minimum": 0},
        "value_kind": {"enum": list(VALUE_KINDS)},
        "order": {"enum": ["ascending", "descending"]},
        "bars": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["dim", "birth", "death"],
                "additionalProperties": False,
                "properties": {
                    "dim": {"type": "integer", "minimum": 0},
                    "birth": {"type": "number"},
                    "death": {"type": ["number", "null"]},
                    "representative": {
                        "type": ["array", "null"],
                        "items": {"type": "array", "minItems": 1,
                                  "items": {"type": "integer", "minimum": 0}},
                    },
                },
            },
        },
    },
}


def _num(x: float):
    """Shortest round-trip form; integral values are written without a fraction."""
    if x.is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return x


def barcode_to_dict(b: Barcode) -> dict:
    if b.value_kind not in VALUE_KINDS:
        raise ParseError(f"value_kind must be one of {VALUE_KINDS}, got {b.value_kind!r}", "$.value_kind")
    doc = {"max_dim": b.max_dim, "value_kind": b.value_kind}
    if b.decreasing:
        doc["order"] = "descending"
    doc["bars"] = [
        {
            "dim": bar.dim,
            "birth": _num(bar.birth),
            "death": None if math.isinf(bar.death) else _num(bar.death),
            "representative": None if bar.representative is None else [list(s) for s in bar.representative],
        }
        for bar in b.bars
    ]
    return doc


def write_barcode(b: Barcode) -> bytes:
    """Serialize to the JSON barcode document (deterministic bytes)."""
    return (json.dumps(barcode_to_dict(b), separators=(",", ":"), allow_nan=False) + "\n").encode("utf-8")


def barcode_from_dict(doc) -> Barcode:
    validator = jsonschema.Draft202012Validator(BARCODE_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ParseError(err.message, err.json_path)
    decreasing = doc.get("order") == "descending"
    inf = -math.inf if decreasing else math.inf
    bars = []
    for k, item in enumerate(doc["bars"]):
        birth = float(item["birth"])
        death = inf if item["death"] is None else float(item["death"])
        if item["dim"] > doc["max_dim"]:
            raise ParseError(f"dim {item['dim']} exceeds max_dim", f"$.bars[{k}].dim")
        if (death < birth) if not decreasing else (death > birth):
            raise ParseError("death precedes birth", f"$.bars[{k}].death")
        rep = item.get("representative")
        rep = None if rep is None else tuple(tuple(s) for s in rep)
        bars.append(Bar(item["dim"], birth, death, rep))
    b = Barcode(doc["max_dim"], tuple(bars), doc["value_kind"], decreasing)
    if list(b.bars) != bars:
        raise ParseError("bars are not in canonical (dim, birth, death) order", "$.bars")
    return b


def read_barcode(data) -> Barcode:
    text = _text(data)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "$") from None
    return barcode_from_dict(doc)


def write_barcode_csv(b: Barcode) -> bytes:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "birth", "death", "representative"])
    for bar in b.bars:
        rep = "" if bar.representative is None else " ".join("-".join(map(str, s)) for s in bar.representative)
        w.writerow([bar.dim, repr(_num(bar.birth)), repr(_num(bar.death)) if not math.isinf(bar.death)
                    else ("-inf" if bar.death < 0 else "inf"), rep])
    return buf.getvalue().encode("utf-8")


# -- SVG ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class SvgOptions:
    width: int = 640
    row_height: int = 8
    margin_left: int = 70
    margin_right: int = 40
    margin_top: int = 30
    group_gap: int = 28
    axis_height: int = 40
    title: str = ""


def _f(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * span:
        ticks.append(round(first + k * step, 10))
        k += 1
    return ticks


def axis_range(b: Barcode) -> tuple[float, float]:
    """Value interval drawn on the horizontal axis."""
    vals = [v for bar in b.bars for v in (bar.birth, bar.death) if math.isfinite(v)]
    if not vals:
        return (0.0, 1.0)
    lo, hi = min(vals), max(vals)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    if b.decreasing:
        lo, hi = hi, lo
    return (lo, hi)


def axis_position(value: float, b: Barcode, options: SvgOptions = SvgOptions()) -> float:
    """x coordinate of ``value`` in the rendering of ``b``."""
    lo, hi = axis_range(b)
    plot_w = options.width - options.margin_left - options.margin_right
    return options.margin_left + (value - lo) / (hi - lo) * plot_w


def render_barcode_svg(b: Barcode, options: SvgOptions = SvgOptions()) -> bytes:
    """Barcode diagram: one horizontal segment per bar, grouped by dimension."""
    o = options
    right = o.width - o.margin_right
    arrow_end = right + o.margin_right * 0.6
    out = []
    y = o.margin_top
    groups = []
    for dim in range(b.max_dim + 1):
        bars = b.in_dim(dim)
        lines = [f'<g class="dimension" id="dim-{dim}">',
                 f'<text class="label" x="{_f(o.margin_left - 8)}" y="{_f(y + 10)}" text-anchor="end">H{dim}</text>']
        y += 6
        for bar in bars:
            y += o.row_height
            x1 = axis_position(bar.birth, b, o)
            if math.isinf(bar.death):
                lines.append(f'<line class="bar infinite" x1="{_f(x1)}" y1="{_f(y)}" x2="{_f(arrow_end)}" '
                             f'y2="{_f(y)}" marker-end="url(#arrow)"/>')
            else:
                x2 = axis_position(bar.death, b, o)
                lines.append(f'<line class="bar" x1="{_f(x1)}" y1="{_f(y)}" x2="{_f(x2)}" y2="{_f(y)}"/>')
        lines.append("</g>")
        groups.extend(lines)
        y += o.group_gap
    axis_y = y
    height = axis_y + o.axis_height

    lo, hi = axis_range(b)
    axis = ['<g class="axis">',
            f'<line x1="{_f(o.margin_left)}" y1="{_f(axis_y)}" x2="{_f(right)}" y2="{_f(axis_y)}"/>']
    for t in _nice_ticks(min(lo, hi), max(lo, hi)):
        x = axis_position(t, b, o)
        label = str(_num(float(t)))
        axis.append(f'<line x1="{_f(x)}" y1="{_f(axis_y)}" x2="{_f(x)}" y2="{_f(axis_y + 5)}"/>')
        axis.append(f'<text x="{_f(x)}" y="{_f(axis_y + 17)}" text-anchor="middle">{escape(label)}</text>')
    axis.append(f'<text class="axis-label" x="{_f((o.margin_left + right) / 2)}" y="{_f(axis_y + 34)}" '
                f'text-anchor="middle">{escape(b.value_kind)}</text>')
    axis.append("</g>")

    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{o.width}" height="{_f(height)}" '
               f'viewBox="0 0 {o.width} {_f(height)}">')
    out.append('<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="5" '
               'markerHeight="5" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>')
    out.append('<style>.bar{stroke:#1f4e9c;stroke-width:3}.axis line{stroke:#000}'
               'text{font-family:sans-serif;font-size:11px}</style>')
    if o.title:
        out.append(f'<text class="title" x="{_f(o.width / 2)}" y="16" text-anchor="middle">{escape(o.title)}</text>')
    out.extend(groups)
    out.extend(axis)
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
