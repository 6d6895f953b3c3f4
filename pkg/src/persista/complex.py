"""Filtered simplicial complexes.

A simplex is a strictly increasing tuple of vertex ids. A
:class:`FilteredComplex` maps simplices to filtration values and, once
canonicalized, exposes them in the fixed total order consumed by the
reduction: ``(value, dimension, vertex tuple)``, with ``value`` read in
filtration direction (negated for decreasing filtrations).
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .exceptions import ValidationError

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Sort ``vertices`` into a canonical simplex; duplicates are rejected."""
    s = tuple(sorted(int(v) for v in vertices))
    if not s:
        raise ValidationError("a simplex needs at least one vertex")
    if s[0] < 0:
        raise ValidationError(f"negative vertex id in {s}")
    if any(a == b for a, b in zip(s, s[1:])):
        raise ValidationError(f"repeated vertex in {s}")
    return s


def faces(s: Sequence[int]) -> list[Simplex]:
    """Codimension-1 faces of ``s`` in lexicographic order (empty for a vertex)."""
    if len(s) <= 1:
        return []
    return [tuple(f) for f in combinations(s, len(s) - 1)]


class FilteredComplex:
    """Mutable builder that freezes into a canonical filtered complex.

    Parameters
    ----------
    vertex_labels : sequence of str, optional
        Label per vertex id. Defaults to ``str(id)``.
    decreasing : bool
        If true, the filtration runs from high values to low ones
        (superlevel filtrations); "earlier" then means "larger".
    """

    def __init__(self, vertex_labels: Sequence[str] | None = None, decreasing: bool = False):
        self.decreasing = bool(decreasing)
        self._labels = list(vertex_labels) if vertex_labels is not None else None
        self._values: dict[Simplex, float] = {}
        self._order: tuple[Simplex, ...] | None = None
        self._index: dict[Simplex, int] | None = None

    # -- building -----------------------------------------------------------

    def _earlier(self, a: float, b: float) -> float:
        return max(a, b) if self.decreasing else min(a, b)

    def _check_mutable(self):
        if self._order is not None:
            raise ValidationError("complex is canonicalized and immutable")

    def add_simplex(self, s: Iterable[int], value: float) -> FilteredComplex:
        """Insert ``s`` and all its faces at ``value``.

        Re-inserting keeps the earlier of the two values; faces already
        present are moved earlier when needed so monotonicity holds.
        """
        self._check_mutable()
        s = make_simplex(s)
        value = float(value)
        self._values[s] = self._earlier(value, self._values.get(s, value))
        for k in range(1, len(s)):
            for f in combinations(s, k):
                self._values[f] = self._earlier(value, self._values.get(f, value))
        return self

    @classmethod
    def from_simplices(cls, items: Iterable[tuple[Iterable[int], float]], vertex_labels=None,
                       decreasing: bool = False) -> FilteredComplex:
        """Raw constructor: stores exactly ``items`` with no closure fix-up.

        Useful for loading external filtrations; :meth:`canonicalize`
        reports any closure or monotonicity violation.
        """
        K = cls(vertex_labels, decreasing)
        for s, v in items:
            s = make_simplex(s)
            v = float(v)
            K._values[s] = K._earlier(v, K._values.get(s, v))
        return K

    # -- freezing -------------------------------------------------------------

    def sort_key(self, s: Simplex) -> tuple[float, int, Simplex]:
        v = self._values[s]
        return (-v if self.decreasing else v, len(s), s)

    def validate(self) -> None:
        """Raise :class:`ValidationError` on a closure or monotonicity violation."""
        sign = -1.0 if self.decreasing else 1.0
        for s, v in self._values.items():
            if v != v:
                raise ValidationError(f"simplex {s} has NaN filtration value")
            for f in faces(s):
                fv = self._values.get(f)
                if fv is None:
                    raise ValidationError(f"closure violated: face {f} of {s} is missing")
                if sign * fv > sign * v:
                    raise ValidationError(
                        f"monotonicity violated: face {f} at {fv!r} enters after coface {s} at {v!r}"
                    )
        vertices = sorted(s[0] for s in self._values if len(s) == 1)
        if vertices != list(range(len(vertices))):
            raise ValidationError("vertex ids must be dense (0..n-1)")
        if self._labels is not None and len(self._labels) != len(vertices):
            raise ValidationError(
                f"{len(self._labels)} vertex labels given for {len(vertices)} vertices"
            )

    def canonicalize(self) -> FilteredComplex:
        """Return an immutable copy in canonical order (idempotent)."""
        if self._order is not None:
            return self
        self.validate()
        out = FilteredComplex(self._labels, self.decreasing)
        out._values = dict(self._values)
        out._order = tuple(sorted(out._values, key=out.sort_key))
        out._index = {s: i for i, s in enumerate(out._order)}
        if out._labels is None:
            out._labels = [str(i) for i in range(out.n_vertices)]
        return out

    # -- queries ----------------------------------------------------------------

    @property
    def is_canonical(self) -> bool:
        return self._order is not None

    def _require_canonical(self):
        if self._order is None:
            raise ValidationError("complex must be canonicalized first")

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        """Simplices in canonical order."""
        self._require_canonical()
        return self._order

    @property
    def values(self) -> list[float]:
        """Filtration values aligned with :attr:`simplices`."""
        self._require_canonical()
        return [self._values[s] for s in self._order]

    @property
    def vertex_labels(self) -> list[str]:
        if self._labels is None:
            return [str(i) for i in range(self.n_vertices)]
        return list(self._labels)

    @property
    def n_vertices(self) -> int:
        return sum(1 for s in self._values if len(s) == 1)

    @property
    def max_dimension(self) -> int:
        return max((len(s) - 1 for s in self._values), default=-1)

    def index(self, s: Sequence[int]) -> int:
        self._require_canonical()
        return self._index[tuple(s)]

    def value(self, s: Sequence[int]) -> float:
        return self._values[tuple(s)]

    def precedes_or_equal(self, a: float, b: float) -> bool:
        """True if value ``a`` is reached no later than ``b`` in this filtration."""
        return a >= b if self.decreasing else a <= b

    def snapshot(self, t: float) -> set[Simplex]:
        """Simplices present at filtration value ``t``."""
        return {s for s, v in self._values.items() if self.precedes_or_equal(v, t)}

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._values

    def __iter__(self) -> Iterator[tuple[Simplex, float]]:
        order = self._order if self._order is not None else sorted(self._values, key=self.sort_key)
        for s in order:
            yield s, self._values[s]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return self.decreasing == other.decreasing and self._values == other._values

    def __repr__(self) -> str:
        state = "canonical" if self.is_canonical else "building"
        return f"FilteredComplex({len(self)} simplices, dim {self.max_dimension}, {state})"


def add_simplex(complex_: FilteredComplex, s: Iterable[int], value: float) -> FilteredComplex:
    return complex_.add_simplex(s, value)


def canonicalize(complex_: FilteredComplex) -> FilteredComplex:
    return complex_.canonicalize()
