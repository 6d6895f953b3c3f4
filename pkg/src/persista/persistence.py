"""GF(2) boundary-matrix reduction, barcodes and representative cycles.

Columns are stored as Python integers used as bitsets: bit ``i`` of column
``j`` is set when simplex ``i`` lies in the boundary (or, after reduction,
in the reduced chain) of simplex ``j``. Adding two columns over GF(2) is a
single XOR and the lowest nonzero entry is ``bit_length() - 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .complex import FilteredComplex, Simplex, faces
from .exceptions import InvariantError, ValidationError

STRATEGIES = ("naive", "clearing")


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse boundary matrix: ``columns[j]`` lists face positions of simplex ``j``."""

    columns: tuple[tuple[int, ...], ...]
    dimensions: tuple[int, ...]

    def __len__(self):
        return len(self.columns)


def boundary_matrix(K: FilteredComplex) -> BoundaryMatrix:
    index = {s: i for i, s in enumerate(K.simplices)}
    cols = []
    for j, s in enumerate(K.simplices):
        col = tuple(sorted(index[f] for f in faces(s)))
        if col and col[-1] >= j:
            raise InvariantError(f"face of simplex {s} does not precede it")
        cols.append(col)
    return BoundaryMatrix(tuple(cols), tuple(len(s) - 1 for s in K.simplices))


def _low(col: int) -> int:
    return col.bit_length() - 1


@dataclass
class ReducedBoundaryMatrix:
    """Result of column reduction ``R = D V``.

    ``low_to_column`` maps each pivot row to the unique column having it as
    lowest entry. ``cycles[j]`` is column ``j`` of ``V`` (``None`` where the
    clearing strategy skipped the column).
    """

    columns: list[int]
    cycles: list[int | None]
    low_to_column: dict[int, int]
    dimensions: tuple[int, ...]
    strategy: str
    complex: FilteredComplex | None = field(default=None, repr=False)

    def low(self, j: int) -> int:
        return _low(self.columns[j])

    def pairing(self) -> dict[int, int | None]:
        """Birth position -> death position (``None`` for essential classes)."""
        out: dict[int, int | None] = {i: j for i, j in self.low_to_column.items()}
        for j, col in enumerate(self.columns):
            if col == 0 and j not in out:
                out[j] = None
        return dict(sorted(out.items()))


def reduce(M: BoundaryMatrix, strategy: str = "clearing", track_cycles: bool = True,
           complex_: FilteredComplex | None = None) -> ReducedBoundaryMatrix:
    """Standard left-to-right GF(2) column reduction.

    ``strategy="clearing"`` processes dimensions top-down and zeroes every
    column whose index already appeared as a pivot (the twist
    optimization); the resulting pairing is identical to ``"naive"``.
    """
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown reduction strategy {strategy!r}; expected one of {STRATEGIES}")
    n = len(M)
    R = [0] * n
    for j, col in enumerate(M.columns):
        bits = 0
        for i in col:
            bits |= 1 << i
        R[j] = bits
    V: list[int | None] = [1 << j for j in range(n)] if track_cycles else [None] * n
    pivots: dict[int, int] = {}

    def reduce_column(j):
        col = R[j]
        v = V[j]
        while col:
            i = col.bit_length() - 1
            k = pivots.get(i)
            if k is None:
                pivots[i] = j
                break
            col ^= R[k]
            if track_cycles:
                v ^= V[k]
        R[j] = col
        V[j] = v
        return col

    if strategy == "naive":
        for j in range(n):
            if R[j]:
                reduce_column(j)
    else:
        by_dim: dict[int, list[int]] = {}
        for j, d in enumerate(M.dimensions):
            by_dim.setdefault(d, []).append(j)
        cleared = [False] * n
        for d in sorted(by_dim, reverse=True):
            for j in by_dim[d]:
                if cleared[j]:
                    continue
                if R[j] and reduce_column(j):
                    i = _low(R[j])
                    R[i] = 0
                    cleared[i] = True
                    V[i] = None
    return ReducedBoundaryMatrix(R, V, pivots, M.dimensions, strategy, complex_)


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float
    birth_simplex: int | None = None
    death_simplex: int | None = None

    @property
    def is_essential(self) -> bool:
        return math.isinf(self.death)

    @property
    def persistence(self) -> float:
        return abs(self.death - self.birth)


def persistence_pairs(R: ReducedBoundaryMatrix, K: FilteredComplex | None = None) -> list[PersistencePair]:
    """All pairs, zero-length ones included, in birth-position order."""
    K = K if K is not None else R.complex
    if K is None:
        raise ValidationError("a filtered complex is needed to read filtration values")
    values = K.values
    inf = -math.inf if K.decreasing else math.inf
    out = []
    for i, j in R.pairing().items():
        death = inf if j is None else values[j]
        out.append(PersistencePair(R.dimensions[i], values[i], death, i, j))
    return out


@dataclass(frozen=True)
class Bar:
    """One interval; ``representative`` is a tuple of simplices or ``None``."""

    dim: int
    birth: float
    death: float
    representative: tuple[Simplex, ...] | None = None

    @property
    def persistence(self) -> float:
        return abs(self.death - self.birth)


def _death_key(death: float, decreasing: bool) -> tuple[int, float]:
    if math.isinf(death):
        return (1, 0.0)
    return (0, -death if decreasing else death)


@dataclass(frozen=True)
class Barcode:
    """Per-dimension multiset of intervals, kept in canonical order."""

    max_dim: int
    bars: tuple[Bar, ...] = ()
    value_kind: str = ""
    decreasing: bool = False

    def __post_init__(self):
        sign = -1.0 if self.decreasing else 1.0
        ordered = tuple(sorted(self.bars, key=lambda b: (
            b.dim, sign * b.birth, _death_key(b.death, self.decreasing), b.representative or ())))
        object.__setattr__(self, "bars", ordered)

    def intervals(self, dim: int) -> list[tuple[float, float]]:
        return [(b.birth, b.death) for b in self.bars if b.dim == dim]

    def in_dim(self, dim: int) -> list[Bar]:
        return [b for b in self.bars if b.dim == dim]

    def betti_at(self, t: float, dim: int) -> int:
        return betti_at(self, t, dim)

    def __len__(self):
        return len(self.bars)


def barcode(K: FilteredComplex, max_dim: int = 1, strategy: str = "clearing",
            keep_zero_length: bool = False, representatives: bool = False,
            value_kind: str = "", reduced: ReducedBoundaryMatrix | None = None) -> Barcode:
    """Barcode of ``K`` in dimensions ``0..max_dim``.

    ``K`` should contain simplices up to dimension ``max_dim + 1`` so that
    classes in the top reported dimension can die.
    """
    if max_dim < 0:
        raise ValidationError(f"max_dim must be >= 0, got {max_dim}")
    K = K.canonicalize()
    if reduced is None:
        reduced = reduce(boundary_matrix(K), strategy=strategy, track_cycles=representatives, complex_=K)
    bars = []
    for p in persistence_pairs(reduced, K):
        if p.dim > max_dim:
            continue
        if p.death == p.birth and not keep_zero_length:
            continue
        rep = representative(reduced, p, K).cycle if representatives else None
        bars.append(Bar(p.dim, p.birth, p.death, rep))
    return Barcode(max_dim, tuple(bars), value_kind, K.decreasing)


def betti_at(b: Barcode, t: float, dim: int) -> int:
    """Number of bars of dimension ``dim`` alive at ``t`` (birth <= t < death)."""
    if b.decreasing:
        return sum(1 for bar in b.bars if bar.dim == dim and bar.birth >= t > bar.death)
    return sum(1 for bar in b.bars if bar.dim == dim and bar.birth <= t < bar.death)


@dataclass(frozen=True)
class Representative:
    pair: PersistencePair
    cycle: tuple[Simplex, ...]

    def labels(self, K: FilteredComplex) -> list[tuple[str, ...]]:
        names = K.vertex_labels
        return [tuple(names[v] for v in s) for s in self.cycle]

    def vertices(self) -> list[int]:
        return sorted({v for s in self.cycle for v in s})


def _bits_to_positions(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _component_of(K: FilteredComplex, vertex: int) -> list[int]:
    parent = list(range(K.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in K.simplices:
        if len(s) == 2:
            a, b = find(s[0]), find(s[1])
            if a != b:
                parent[a] = b
    root = find(vertex)
    return [v for v in range(K.n_vertices) if find(v) == root]


def representative(R: ReducedBoundaryMatrix, p: PersistencePair,
                   K: FilteredComplex | None = None) -> Representative:
    """A GF(2) cycle representing the class of ``p``.

    Finite pairs use the reduced death column, whose entries all precede the
    birth simplex. Essential classes use the reduction's record of the
    birth column, except in dimension 0 where the whole final component of
    the birth vertex is returned.
    """
    K = K if K is not None else R.complex
    if K is None:
        raise ValidationError("a filtered complex is needed to resolve simplices")
    simplices = K.simplices
    if p.death_simplex is not None:
        chain = R.columns[p.death_simplex]
        if _low(chain) != p.birth_simplex:
            raise InvariantError("pair does not belong to this reduction")
        cycle = tuple(simplices[i] for i in _bits_to_positions(chain))
    elif p.dim == 0:
        cycle = tuple((v,) for v in _component_of(K, simplices[p.birth_simplex][0]))
    else:
        chain = R.cycles[p.birth_simplex]
        if chain is None:
            raise ValidationError("reduction was run without cycle tracking")
        cycle = tuple(simplices[i] for i in _bits_to_positions(chain))
    return Representative(p, cycle)


def chain_boundary(chain: Sequence[Simplex]) -> set[Simplex]:
    """GF(2) boundary of a chain given as a collection of simplices."""
    out: set[Simplex] = set()
    for s in chain:
        for f in faces(s):
            out ^= {f}
    return out
