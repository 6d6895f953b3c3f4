"""Weight rank clique filtration of a weighted network.

The graph is thresholded at each distinct edge weight in turn; at every
step the maximal cliques of the thresholded graph are taken as simplices.
A simplex therefore enters at the first threshold where all of its edges
are present.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ._parallel import ordered_map
from .complex import FilteredComplex
from .exceptions import ValidationError


class WeightOrder(str, enum.Enum):
    """Direction in which thresholds are visited.

    ``ASCENDING`` adds edges from the smallest weight upward (sublevel);
    ``DESCENDING`` keeps edges of weight at least the threshold, visiting
    thresholds from the largest weight downward (superlevel).
    """

    ASCENDING = "ascending"
    DESCENDING = "descending"

    @classmethod
    def coerce(cls, value) -> WeightOrder:
        if isinstance(value, cls):
            return value
        aliases = {"asc": cls.ASCENDING, "desc": cls.DESCENDING}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValidationError(f"unknown weight order {value!r}") from None


@dataclass(frozen=True)
class WeightedGraph:
    """Labeled nodes ``0..n-1`` and weighted undirected edges keyed ``(i, j)``, ``i < j``."""

    labels: tuple[str, ...]
    edges: Mapping[tuple[int, int], float]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise ValidationError("node labels must be unique")
        n = len(labels)
        clean = {}
        for (a, b), w in self.edges.items():
            a, b = int(a), int(b)
            if a == b:
                raise ValidationError(f"self-loop on node {labels[a] if 0 <= a < n else a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"edge ({a}, {b}) references an undeclared node")
            key = (min(a, b), max(a, b))
            if key in clean:
                raise ValidationError(f"duplicate edge {labels[key[0]]}-{labels[key[1]]}")
            w = float(w)
            if not math.isfinite(w):
                raise ValidationError(f"edge {labels[key[0]]}-{labels[key[1]]} has non-finite weight")
            clean[key] = w
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", dict(sorted(clean.items())))

    @classmethod
    def from_labeled_edges(cls, labels: Sequence[str], edges: Iterable[tuple[str, str, float]]) -> WeightedGraph:
        index = {lab: i for i, lab in enumerate(labels)}
        out = {}
        for a, b, w in edges:
            for lab in (a, b):
                if lab not in index:
                    raise ValidationError(f"unknown node label {lab!r}")
            key = tuple(sorted((index[a], index[b])))
            if key in out:
                raise ValidationError(f"duplicate edge {a}-{b}")
            out[key] = w
        return cls(tuple(labels), out)

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown node label {label!r}") from None

    def weight(self, a: str, b: str) -> float | None:
        i, j = sorted((self.index(a), self.index(b)))
        return self.edges.get((i, j))


@dataclass(frozen=True)
class Graph:
    """Unweighted simple graph on nodes ``0..n_nodes-1``."""

    n_nodes: int
    edges: frozenset[tuple[int, int]]

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n_nodes)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def threshold_sequence(g: WeightedGraph, order=WeightOrder.ASCENDING) -> list[float]:
    """Distinct edge weights in the order the filtration visits them."""
    order = WeightOrder.coerce(order)
    return sorted(set(g.edges.values()), reverse=order is WeightOrder.DESCENDING)


def threshold_graph(g: WeightedGraph, t: float, order=WeightOrder.ASCENDING) -> Graph:
    """Binary graph at threshold ``t``; every node is kept."""
    order = WeightOrder.coerce(order)
    if order is WeightOrder.ASCENDING:
        kept = frozenset(e for e, w in g.edges.items() if w <= t)
    else:
        kept = frozenset(e for e, w in g.edges.items() if w >= t)
    return Graph(g.n_nodes, kept)


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques (isolated nodes included), sorted.

    Bron-Kerbosch with Tomita pivoting: the pivot maximizes the number of
    candidates it covers, so only non-neighbours of the pivot are branched on.
    """
    adj = g.adjacency()
    found: list[tuple[int, ...]] = []
    stack = [(frozenset(), frozenset(range(g.n_nodes)), frozenset())]
    while stack:
        R, P, X = stack.pop()
        if not P:
            if not X:
                found.append(tuple(sorted(R)))
            continue
        pivot = max(P | X, key=lambda u: (len(P & adj[u]), -u))
        for v in sorted(P - adj[pivot]):
            stack.append((R | {v}, P & adj[v], X & adj[v]))
            P = P - {v}
            X = X | {v}
    return sorted(found)


def remove_edges(g: WeightedGraph, pairs: Iterable[tuple[str, str]]) -> WeightedGraph:
    """Copy of ``g`` without the named edges; every node is kept."""
    edges = dict(g.edges)
    for a, b in pairs:
        i, j = sorted((g.index(a), g.index(b)))
        if (i, j) in edges:
            del edges[(i, j)]
        else:
            warnings.warn(f"no edge {a}-{b} to remove", stacklevel=2)
    return WeightedGraph(g.labels, edges)


def default_start(thresholds: Sequence[float], order=WeightOrder.ASCENDING) -> float:
    """Value of step 0: one unit before the first threshold (0 if there are none)."""
    order = WeightOrder.coerce(order)
    if not thresholds:
        return 0.0
    return thresholds[0] - 1.0 if order is WeightOrder.ASCENDING else thresholds[0] + 1.0


def build_wrcf(g: WeightedGraph, order=WeightOrder.ASCENDING, max_dim: int = 1,
               start: float | None = None, node_values: Mapping[str, float] | None = None,
               n_jobs: int | None = None) -> FilteredComplex:
    """Weight rank clique filtration of ``g``.

    Parameters
    ----------
    g : WeightedGraph
    order : WeightOrder or {"ascending", "descending"}
    max_dim : int
        Highest homology dimension of interest; cliques contribute faces
        up to dimension ``max_dim + 1``.
    start : float, optional
        Filtration value of step 0, where every node is present. Defaults
        to :func:`default_start`.
    node_values : mapping label -> value, optional
        Births each node at its own value instead of ``start``. A simplex
        then enters no earlier than its latest vertex.
    n_jobs : int, optional
        Worker threads for per-threshold clique enumeration.
    """
    order = WeightOrder.coerce(order)
    if max_dim < 1:
        raise ValidationError(f"max_dim must be >= 1, got {max_dim}")
    decreasing = order is WeightOrder.DESCENDING
    thresholds = threshold_sequence(g, order)
    if start is None:
        start = default_start(thresholds, order)
    K = FilteredComplex(g.labels, decreasing=decreasing)
    later = min if decreasing else max

    births = [float(start)] * g.n_nodes
    if node_values is not None:
        for lab, v in node_values.items():
            births[g.index(lab)] = float(v)
    for v in range(g.n_nodes):
        K.add_simplex((v,), births[v])

    top = max_dim + 2

    def simplices_at(t):
        out = []
        for clique in maximal_cliques(threshold_graph(g, t, order)):
            for k in range(2, min(len(clique), top) + 1):
                out.extend(combinations(clique, k))
        return out

    # thresholds are visited in filtration order, so the first sighting of a
    # simplex is its entry value
    seen = set()
    for t, found in zip(thresholds, ordered_map(simplices_at, thresholds, n_jobs)):
        for s in found:
            if s in seen:
                continue
            seen.add(s)
            K.add_simplex(s, later([t] + [births[v] for v in s]))
    return K.canonicalize()
