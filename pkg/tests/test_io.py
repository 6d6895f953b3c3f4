import json
import math
import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from persista.datasets import eu_graph, eu_graph_text
from persista.estimators import WeightRankCliquePersistence
from persista.exceptions import ParseError
from persista.io import (
    SvgOptions, axis_position, parse_graph, parse_points, read_barcode, render_barcode_svg, write_barcode,
    write_barcode_csv,
)
from persista.persistence import Bar, Barcode


def test_parse_small_graph():
    g = parse_graph(b"node 0 a\nnode 1 b  # trailing comment\n\nedge a b 3.5\n")
    assert g.labels == ("a", "b") and g.edges == {(0, 1): 3.5}


@pytest.mark.parametrize("text, pattern", [
    ("node 0 a\nedge a z 1\n", r"line 2.*'z'"),
    ("node 0 a\nnode 1 a\n", r"line 2.*duplicate label"),
    ("node 0 a\nnode 1 b\nedge a b 1\nedge b a 2\n", r"line 4.*duplicate edge"),
    ("node 0 a\nnode 1 b\nedge a b nan\n", r"line 3.*not finite"),
    ("node 0 a\nnode 1 b\nedge a b x\n", r"line 3.*not a number"),
    ("node 0 a\nvertex 1 b\n", r"line 2.*unknown record"),
    ("node 0 a b\n", r"line 1"),
    ("node 0 a\nnode 2 b\n", r"0\.\.n-1"),
    ("node 0 a\nedge a a 1\n", r"line 2.*self-loop"),
])
def test_graph_errors(text, pattern):
    with pytest.raises(ParseError, match=pattern):
        parse_graph(text)


def test_bundled_graph_parses():
    assert eu_graph().n_nodes == 28
    assert parse_graph(eu_graph_text().encode()) == eu_graph()


def test_points_split_by_vote():
    data = b"id,label,x,y,vote\n1,A,0,0,leave\n2,B,1,0,leave\n3,C,0,1,remain\n"
    leave, remain = parse_points(data)
    assert len(leave) == 2 and len(remain) == 1
    assert remain.labels == ("C",)
    pooled = parse_points(data, split_vote=False)
    assert len(pooled) == 3


def test_points_without_vote():
    pc = parse_points("id,label,lat,lon\n1,Leeds,53.8,-1.55\n2,York,53.96,-1.08\n")
    assert pc.geographic and len(pc) == 2


@pytest.mark.parametrize("text, pattern", [
    ("id,label,lat,lon\n1,a,10,0\n2,b,200,0\n", r"row 2.*latitude"),
    ("id,label,lat,lon\n1,a,10,190\n", r"row 1.*longitude"),
    ("id,label,x,y,vote\n1,a,0,0,maybe\n", r"row 1.*vote"),
    ("id,label,x\n1,a,0\n", r"row 0"),
    ("id,x,y\n1,0,0\n", r"row 0.*label"),
    ("id,label,x,y\n1,a,0,zz\n", r"row 1.*not a number"),
    ("id,label,x,y\n1,a,0,0\n1,b,1,1\n", r"row 2.*duplicate id"),
    ("id,label,x,y\n1,a,0\n", r"row 1.*fields"),
])
def test_points_errors(text, pattern):
    with pytest.raises(ParseError, match=pattern):
        parse_points(text)


def test_empty_barcode_document():
    out = write_barcode(Barcode(1, (), "year"))
    assert out == b'{"max_dim":1,"value_kind":"year","bars":[]}\n'


def test_infinite_death_is_null():
    doc = json.loads(write_barcode(Barcode(0, (Bar(0, 0.0, math.inf),), "euclidean")))
    assert doc["bars"][0]["death"] is None


def test_read_errors_report_json_path():
    with pytest.raises(ParseError, match=r"\$\.bars\[0\]\.death"):
        read_barcode('{"max_dim":1,"value_kind":"year","bars":[{"dim":0,"birth":1,"death":"x"}]}')
    with pytest.raises(ParseError, match=r"^\$"):
        read_barcode('{"max_dim":1,')
    with pytest.raises(ParseError, match="value_kind"):
        read_barcode('{"max_dim":1,"value_kind":"furlongs","bars":[]}')
    with pytest.raises(ParseError, match=r"\$\.bars"):
        read_barcode('{"max_dim":1,"value_kind":"year","bars":['
                     '{"dim":1,"birth":1,"death":null},{"dim":0,"birth":1,"death":null}]}')


def test_descending_barcode_round_trip():
    b = Barcode(0, (Bar(0, 10.0, 4.0), Bar(0, 10.0, -math.inf)), "year", decreasing=True)
    raw = write_barcode(b)
    assert b'"order":"descending"' in raw
    assert read_barcode(raw) == b


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@st.composite
def barcodes(draw):
    max_dim = draw(st.integers(0, 2))
    bars = []
    for _ in range(draw(st.integers(0, 8))):
        birth = draw(finite)
        death = draw(st.one_of(st.just(math.inf), st.floats(0, 1e6).map(lambda d: birth + d)))
        rep = draw(st.one_of(st.none(), st.lists(
            st.lists(st.integers(0, 20), min_size=1, max_size=3).map(lambda s: tuple(sorted(set(s)))),
            min_size=1, max_size=4).map(tuple)))
        bars.append(Bar(draw(st.integers(0, max_dim)), birth, death, rep))
    return Barcode(max_dim, tuple(bars), draw(st.sampled_from(["year", "distance_km", "euclidean"])))


@settings(max_examples=200, deadline=None)
@given(barcodes())
def test_round_trip(b):
    raw = write_barcode(b)
    back = read_barcode(raw)
    assert back == b
    assert write_barcode(back) == raw


def test_csv_output():
    b = Barcode(1, (Bar(0, 1.0, math.inf), Bar(1, 2.5, 3.0, ((0, 1), (1, 2)))), "euclidean")
    lines = write_barcode_csv(b).decode().splitlines()
    assert lines == ["dim,birth,death,representative", "0,1,inf,", "1,2.5,3,0-1 1-2"]


def _bars(svg):
    return re.findall(r'<line class="bar[^"]*"[^>]*/>', svg)


def test_svg_single_bar():
    svg = render_barcode_svg(Barcode(0, (Bar(0, 0.0, 1.0),), "euclidean")).decode()
    assert len(_bars(svg)) == 1
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_svg_empty_has_axes_only():
    svg = render_barcode_svg(Barcode(1, (), "year")).decode()
    assert _bars(svg) == [] and 'class="axis"' in svg and ">year<" in svg


def test_svg_infinite_bar_has_arrow():
    svg = render_barcode_svg(Barcode(0, (Bar(0, 0.0, math.inf),), "euclidean")).decode()
    (bar,) = _bars(svg)
    assert 'marker-end="url(#arrow)"' in bar


def test_svg_eu_loop_starts_at_1995():
    b = WeightRankCliquePersistence().fit_transform(eu_graph())
    svg = render_barcode_svg(b).decode()
    group = re.search(r'<g class="dimension" id="dim-1">(.*?)</g>', svg, re.S).group(1)
    (bar,) = _bars(group)
    x1 = float(re.search(r'x1="([\d.]+)"', bar).group(1))
    assert x1 == pytest.approx(axis_position(1995, b, SvgOptions()), abs=0.01)
    assert render_barcode_svg(b) == render_barcode_svg(b)
