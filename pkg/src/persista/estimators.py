"""scikit-learn style front ends.

Both estimators follow the usual contract: hyper-parameters are set in
``__init__`` and exposed through ``get_params``/``set_params``; ``fit``
builds the filtration and reduces it, storing fitted state in trailing
underscore attributes; ``transform`` returns the barcode.
"""
from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import ValidationError
from .persistence import STRATEGIES, barcode, boundary_matrix, reduce
from .vr import AllPairwise, EpsilonSchedule, Explicit, Metric, PointCloud, UniformGrid, build_vr, pairwise_distances
from .wrcf import WeightedGraph, WeightOrder, build_wrcf


def check_weighted_graph(X, labels=None) -> WeightedGraph:
    """Accept a :class:`WeightedGraph` or a square weight matrix.

    In a matrix, ``nan`` (or ``inf``) on an off-diagonal entry means "no
    edge"; the diagonal is ignored. The matrix must be symmetric.
    """
    if isinstance(X, WeightedGraph):
        return X
    W = check_array(X, ensure_all_finite=False, dtype=float, ensure_min_samples=1)
    n, m = W.shape
    if n != m:
        raise ValidationError(f"weight matrix must be square, got {W.shape}")
    off = ~np.eye(n, dtype=bool)
    finite = np.isfinite(W)
    if not np.array_equal(finite, finite.T) or not np.allclose(np.where(finite, W, 0), np.where(finite, W, 0).T):
        raise ValidationError("weight matrix must be symmetric")
    edges = {(i, j): W[i, j] for i, j in zip(*np.nonzero(finite & off)) if i < j}
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    return WeightedGraph(labels, edges)


def check_point_cloud(X, geographic=False) -> PointCloud:
    """Accept a :class:`PointCloud` or an ``(n_points, n_dims)`` array."""
    if isinstance(X, PointCloud):
        return X
    X = check_array(X, dtype=float, ensure_min_samples=1)
    return PointCloud(X, geographic=geographic)


def _check_max_dim(max_dim):
    if not isinstance(max_dim, numbers.Integral) or max_dim < 1:
        raise ValidationError(f"max_dim must be an integer >= 1, got {max_dim!r}")


def _check_strategy(reduction):
    if reduction not in STRATEGIES:
        raise ValidationError(f"reduction must be one of {STRATEGIES}, got {reduction!r}")


class _PersistenceMixin(TransformerMixin, auto_wrap_output_keys=None):
    def _reduce(self, K):
        self.complex_ = K
        self.reduced_ = reduce(boundary_matrix(K), strategy=self.reduction,
                               track_cycles=self.representatives, complex_=K)
        self.barcode_ = barcode(K, self.max_dim, keep_zero_length=self.keep_zero_length,
                                representatives=self.representatives, value_kind=self._value_kind(),
                                reduced=self.reduced_)
        return self

    def transform(self, X=None):
        """Barcode of the fitted input. ``X`` is accepted for pipeline compatibility."""
        check_is_fitted(self, "barcode_")
        if X is not None:
            return self.fit(X).barcode_
        return self.barcode_

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y, **fit_params).barcode_

    def betti_at(self, t, dim):
        check_is_fitted(self, "barcode_")
        return self.barcode_.betti_at(t, dim)


class WeightRankCliquePersistence(_PersistenceMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Persistent homology of a weighted network via the weight rank clique filtration.

    Parameters
    ----------
    order : {"ascending", "descending"}, default="ascending"
        "ascending" adds edges from light to heavy, "descending" from heavy
        to light.
    max_dim : int, default=1
        Highest homology dimension reported.
    start : float or None, default=None
        Value of the all-vertices step; ``None`` means one unit before the
        first threshold.
    reduction : {"clearing", "naive"}, default="clearing"
    keep_zero_length : bool, default=False
    representatives : bool, default=False
        Attach a representative cycle to every bar.
    n_jobs : int or None, default=None
        Threads for clique enumeration; ``None`` reads ``PERSISTA_THREADS``.

    Attributes
    ----------
    graph_ : WeightedGraph
    complex_ : FilteredComplex
    reduced_ : ReducedBoundaryMatrix
    barcode_ : Barcode
    """

    def __init__(self, order="ascending", max_dim=1, start=None, reduction="clearing",
                 keep_zero_length=False, representatives=False, n_jobs=None):
        self.order = order
        self.max_dim = max_dim
        self.start = start
        self.reduction = reduction
        self.keep_zero_length = keep_zero_length
        self.representatives = representatives
        self.n_jobs = n_jobs

    def _value_kind(self):
        return "year"

    def fit(self, X, y=None, node_values=None):
        _check_max_dim(self.max_dim)
        _check_strategy(self.reduction)
        self.graph_ = check_weighted_graph(X)
        K = build_wrcf(self.graph_, WeightOrder.coerce(self.order), self.max_dim,
                       start=self.start, node_values=node_values, n_jobs=self.n_jobs)
        return self._reduce(K)


class VietorisRipsPersistence(_PersistenceMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Persistent homology of a point cloud via the Vietoris-Rips filtration.

    Parameters
    ----------
    metric : {"euclidean", "haversine"} or None, default=None
        ``None`` picks haversine (km) for geographic clouds and euclidean
        otherwise.
    eps_max : float or None, default=None
        Largest edge length; ``None`` uses the enclosing radius.
    max_dim : int, default=1
    schedule : "all", int, sequence of float or EpsilonSchedule, default="all"
        "all" keeps exact pairwise distances; an int is a uniform grid with
        that many steps; a sequence is an explicit increasing schedule.
    reduction : {"clearing", "naive"}, default="clearing"
    keep_zero_length : bool, default=False
    representatives : bool, default=False
    n_jobs : int or None, default=None
    """

    def __init__(self, metric=None, eps_max=None, max_dim=1, schedule="all", reduction="clearing",
                 keep_zero_length=False, representatives=False, n_jobs=None):
        self.metric = metric
        self.eps_max = eps_max
        self.max_dim = max_dim
        self.schedule = schedule
        self.reduction = reduction
        self.keep_zero_length = keep_zero_length
        self.representatives = representatives
        self.n_jobs = n_jobs

    def _schedule(self):
        s = self.schedule
        if isinstance(s, EpsilonSchedule):
            return s
        if isinstance(s, str) and s == "all":
            return AllPairwise()
        if isinstance(s, numbers.Integral):
            return UniformGrid(int(s))
        return Explicit(tuple(s))

    def _value_kind(self):
        return "distance_km" if self.metric_ is Metric.HAVERSINE else "euclidean"

    def fit(self, X, y=None):
        _check_max_dim(self.max_dim)
        _check_strategy(self.reduction)
        self.cloud_ = check_point_cloud(X)
        self.metric_ = self.cloud_.default_metric if self.metric is None else Metric.coerce(self.metric)
        self.distances_ = pairwise_distances(self.cloud_, self.metric_, self.n_jobs)
        K = build_vr(self.cloud_, self.metric_, self.eps_max, self.max_dim, self._schedule(),
                     distances=self.distances_)
        return self._reduce(K)
