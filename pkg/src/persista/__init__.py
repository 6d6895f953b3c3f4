"""Persistent homology of weighted networks and point clouds over GF(2)."""
from .complex import FilteredComplex, Simplex, faces, make_simplex
from .estimators import VietorisRipsPersistence, WeightRankCliquePersistence
from .exceptions import InvariantError, ParseError, PersistaError, ValidationError
from .persistence import Bar, Barcode, PersistencePair, barcode, betti_at, boundary_matrix, reduce, representative
from .vr import AllPairwise, Explicit, Metric, PointCloud, UniformGrid, build_vr, pairwise_distances
from .wrcf import WeightedGraph, WeightOrder, build_wrcf, maximal_cliques, remove_edges, threshold_graph

__version__ = "0.1.0"

__all__ = [
    "AllPairwise", "Bar", "Barcode", "Explicit", "FilteredComplex", "InvariantError", "Metric",
    "ParseError", "PersistaError", "PersistencePair", "PointCloud", "Simplex", "UniformGrid",
    "ValidationError", "VietorisRipsPersistence", "WeightOrder", "WeightRankCliquePersistence",
    "WeightedGraph", "barcode", "betti_at", "boundary_matrix", "build_vr", "build_wrcf", "faces",
    "make_simplex", "maximal_cliques", "pairwise_distances", "reduce", "remove_edges",
    "representative", "threshold_graph",
]
