"""Vietoris-Rips filtrations of point clouds."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._parallel import effective_threads, ordered_map
from .complex import FilteredComplex
from .exceptions import ValidationError

EARTH_RADIUS_KM = 6371.0


class Metric(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    HAVERSINE = "haversine"

    @classmethod
    def coerce(cls, value) -> Metric:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown metric {value!r}") from None


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Labeled points. Geographic clouds hold ``(lat, lon)`` rows in degrees."""

    coords: np.ndarray
    labels: tuple[str, ...] = ()
    geographic: bool = False

    def __post_init__(self):
        X = np.asarray(self.coords, dtype=float)
        if X.ndim == 1:
            X = X.reshape(-1, 1) if X.size else X.reshape(0, 2)
        if X.ndim != 2:
            raise ValidationError("coordinates must form a 2-D array (points x dims)")
        if not np.all(np.isfinite(X)):
            raise ValidationError("coordinates must be finite")
        if self.geographic:
            if X.shape[1] != 2:
                raise ValidationError("geographic points need exactly (lat, lon)")
            if np.any(np.abs(X[:, 0]) > 90) or np.any(np.abs(X[:, 1]) > 180):
                raise ValidationError("latitude must lie in [-90, 90] and longitude in [-180, 180]")
        labels = tuple(str(x) for x in self.labels) or tuple(str(i) for i in range(len(X)))
        if len(labels) != len(X):
            raise ValidationError(f"{len(labels)} labels for {len(X)} points")
        X.setflags(write=False)
        object.__setattr__(self, "coords", X)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.coords)

    @property
    def default_metric(self) -> Metric:
        return Metric.HAVERSINE if self.geographic else Metric.EUCLIDEAN


def _euclidean_rows(X, rows):
    diff = X[rows, None, :] - X[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _haversine_rows(X, rows, radius=EARTH_RADIUS_KM):
    lat = np.radians(X[:, 0])
    lon = np.radians(X[:, 1])
    dlat = lat[None, :] - lat[rows, None]
    dlon = lon[None, :] - lon[rows, None]
    h = np.sin(dlat / 2) ** 2 + np.cos(lat[rows, None]) * np.cos(lat[None, :]) * np.sin(dlon / 2) ** 2
    return 2 * radius * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))


def pairwise_distances(pc: PointCloud, metric=None, n_jobs: int | None = None) -> np.ndarray:
    """Symmetric distance matrix with an exact zero diagonal."""
    metric = pc.default_metric if metric is None else Metric.coerce(metric)
    if len(pc) < 1:
        raise ValidationError("point cloud is empty")
    if metric is Metric.HAVERSINE and not pc.geographic:
        raise ValidationError("haversine metric needs geographic (lat, lon) coordinates")
    X = pc.coords
    kernel = _haversine_rows if metric is Metric.HAVERSINE else _euclidean_rows
    n = len(X)
    n_chunks = min(effective_threads(n_jobs), n)
    chunks = np.array_split(np.arange(n), n_chunks)
    D = np.vstack(ordered_map(lambda rows: kernel(X, rows), chunks, n_jobs))
    # mirror the upper triangle so symmetry is exact
    iu = np.triu_indices(n, 1)
    D[(iu[1], iu[0])] = D[iu]
    np.fill_diagonal(D, 0.0)
    return D


def enclosing_radius(D: np.ndarray) -> float:
    """Smallest radius at which some point sees every other point."""
    if len(D) <= 1:
        return 0.0
    return float(np.min(np.max(D, axis=1)))


class EpsilonSchedule:
    """Maps edge diameters to filtration values."""

    def snap(self, d: np.ndarray, eps_max: float) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class AllPairwise(EpsilonSchedule):
    """Every distinct pairwise distance up to ``eps_max`` is a step (exact values)."""

    def snap(self, d, eps_max):
        d = np.asarray(d, dtype=float)
        return np.where(d <= eps_max, d, np.nan)


def _snap_to(grid: np.ndarray, d: np.ndarray, eps_max: float) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    grid = grid[grid <= eps_max]
    if grid.size == 0:
        return np.full(d.shape, np.nan)
    idx = np.searchsorted(grid, d, side="left")
    ok = (idx < grid.size) & (d <= eps_max)
    out = np.full(d.shape, np.nan)
    out[ok] = grid[idx[ok]]
    return out


@dataclass(frozen=True)
class Explicit(EpsilonSchedule):
    """A given strictly increasing sequence of positive distances."""

    values: tuple[float, ...] = field(default=())

    def __post_init__(self):
        v = tuple(float(x) for x in self.values)
        if not v:
            raise ValidationError("explicit schedule needs at least one value")
        if v[0] <= 0 or any(b <= a for a, b in zip(v, v[1:])):
            raise ValidationError("schedule values must be positive and strictly increasing")
        object.__setattr__(self, "values", v)

    def snap(self, d, eps_max):
        return _snap_to(np.array(self.values), d, eps_max)


@dataclass(frozen=True)
class UniformGrid(EpsilonSchedule):
    """``n_steps`` equally spaced distances ending at ``eps_max``."""

    n_steps: int = 100

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValidationError("uniform grid needs n_steps >= 1")

    def snap(self, d, eps_max):
        grid = eps_max * np.arange(1, self.n_steps + 1) / self.n_steps
        return _snap_to(grid, d, eps_max)


def build_vr(pc: PointCloud, metric=None, eps_max: float | None = None, max_dim: int = 1,
             schedule: EpsilonSchedule | None = None, n_jobs: int | None = None,
             distances: np.ndarray | None = None) -> FilteredComplex:
    """Vietoris-Rips filtration up to simplex dimension ``max_dim + 1``.

    A simplex enters at its diameter (snapped up to the schedule). Edges
    longer than ``eps_max``, or beyond the last schedule step, are left
    out together with their cofaces. ``eps_max`` defaults to the enclosing
    radius.
    """
    if max_dim < 1:
        raise ValidationError(f"max_dim must be >= 1, got {max_dim}")
    D = pairwise_distances(pc, metric, n_jobs) if distances is None else np.asarray(distances, float)
    n = len(D)
    if eps_max is None:
        eps_max = enclosing_radius(D)
        if eps_max == 0.0:
            eps_max = math.inf
    if not eps_max > 0:
        raise ValidationError(f"eps_max must be positive, got {eps_max}")
    schedule = AllPairwise() if schedule is None else schedule

    E = schedule.snap(D, eps_max)
    np.fill_diagonal(E, np.nan)
    higher = [[int(u) for u in np.nonzero(np.isfinite(E[v]))[0] if u > v] for v in range(n)]
    nbrs = [set(h) for h in higher]
    W = E.tolist()

    K = FilteredComplex(pc.labels)
    for v in range(n):
        K.add_simplex((v,), 0.0)
    top = max_dim + 2

    def expand(simplex, value, candidates):
        K.add_simplex(simplex, value)
        if len(simplex) == top:
            return
        for u in candidates:
            row = W[u]
            expand(simplex + (u,), max(value, max(row[w] for w in simplex)), candidates & nbrs[u])

    for v in range(n):
        for u in higher[v]:
            expand((v, u), W[v][u], nbrs[v] & nbrs[u])
    return K.canonicalize()
