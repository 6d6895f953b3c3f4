"""Bundled fixtures: the EU accession network and synthetic point clouds."""
from __future__ import annotations

from importlib import resources

import numpy as np

from ..exceptions import ValidationError
from ..vr import PointCloud
from ..wrcf import WeightedGraph

EU_GRAPH_RESOURCE = "eu_network.graph"

# Year each member state joined (as of June 2016).
EU_ACCESSION_YEARS = {
    "Belgium": 1957, "Germany": 1957, "France": 1957, "Italy": 1957,
    "Luxembourg": 1957, "Netherlands": 1957,
    "Denmark": 1973, "Ireland": 1973, "UK": 1973,
    "Greece": 1981,
    "Spain": 1986, "Portugal": 1986,
    "Austria": 1995, "Finland": 1995, "Sweden": 1995,
    "CzechRepublic": 2004, "Estonia": 2004, "Cyprus": 2004, "Latvia": 2004,
    "Lithuania": 2004, "Hungary": 2004, "Malta": 2004, "Poland": 2004,
    "Slovakia": 2004, "Slovenia": 2004,
    "Bulgaria": 2007, "Romania": 2007,
    "Croatia": 2013,
}

# The UK's two links to the rest of the network.
BREXIT_EDGES = (("UK", "Ireland"), ("UK", "France"))

# First year shown for the pre-referendum network.
EU_START_YEAR = 1953


def eu_graph_path():
    """Filesystem path of the bundled graph file."""
    return resources.files(__name__).joinpath(EU_GRAPH_RESOURCE)


def eu_graph_text() -> str:
    return eu_graph_path().read_text(encoding="utf-8")


def eu_graph() -> WeightedGraph:
    from ..io import parse_graph

    return parse_graph(eu_graph_text())


def synthetic_annulus(n: int = 50, r_inner: float = 1.0, r_outer: float = 1.5, seed: int = 7) -> PointCloud:
    """``n`` points drawn uniformly (by area) from a planar annulus."""
    if n < 8:
        raise ValidationError(f"annulus needs n >= 8, got {n}")
    if not 0 < r_inner < r_outer:
        raise ValidationError("need 0 < r_inner < r_outer")
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(r_inner ** 2, r_outer ** 2, n))
    theta = rng.uniform(0.0, 2 * np.pi, n)
    return PointCloud(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))


def unit_square() -> PointCloud:
    return PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]), ("a", "b", "c", "d"))
