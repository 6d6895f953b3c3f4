"""Brute-force homology for cross-checking the reduction engine.

Deliberately self-contained: nothing here imports the reduction code, so a
bug there cannot be mirrored here.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

import numpy as np

MAX_SIMPLICES = 1 << 12


def snapshot(items: Iterable[tuple[tuple[int, ...], float]], t: float, decreasing: bool = False) -> set:
    """Plain simplex set of a filtration at value ``t``."""
    if decreasing:
        return {tuple(s) for s, v in items if v >= t}
    return {tuple(s) for s, v in items if v <= t}


def gf2_rank(A: np.ndarray) -> int:
    """Rank over GF(2) by dense Gaussian elimination."""
    A = (np.asarray(A, dtype=np.uint8) & 1).copy()
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        hits = np.nonzero(A[rank:, c])[0]
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        below = np.nonzero(A[:, c])[0]
        below = below[below != rank]
        A[below] ^= A[rank]
        rank += 1
    return rank


def _boundary_rank(by_dim: dict[int, list], k: int) -> int:
    """Rank of the boundary map from k-chains to (k-1)-chains."""
    if k <= 0 or not by_dim.get(k) or not by_dim.get(k - 1):
        return 0
    rows = {s: i for i, s in enumerate(by_dim[k - 1])}
    D = np.zeros((len(rows), len(by_dim[k])), dtype=np.uint8)
    for j, s in enumerate(by_dim[k]):
        for f in combinations(s, len(s) - 1):
            D[rows[f], j] = 1
    return gf2_rank(D)


def betti_bruteforce(simplices: Iterable[Iterable[int]], dim: int) -> int:
    """Betti number over GF(2): dim ker d_k - rank d_{k+1}.

    The input must be closed under taking faces.
    """
    if dim < 0:
        raise ValueError("dim must be >= 0")
    S = {tuple(sorted(s)) for s in simplices}
    if len(S) > MAX_SIMPLICES:
        raise ValueError(f"oracle is limited to {MAX_SIMPLICES} simplices, got {len(S)}")
    for s in S:
        for f in combinations(s, len(s) - 1):
            if f and f not in S:
                raise ValueError(f"input not closed: {f} missing for {s}")
    by_dim: dict[int, list] = {}
    for s in sorted(S):
        by_dim.setdefault(len(s) - 1, []).append(s)
    n_k = len(by_dim.get(dim, []))
    kernel = n_k - _boundary_rank(by_dim, dim)
    return kernel - _boundary_rank(by_dim, dim + 1)


def components_unionfind(n_nodes: int, edges: Iterable[tuple[int, int]]) -> int:
    """Number of connected components of a graph on nodes ``0..n_nodes-1``."""
    return len(set(component_labels(n_nodes, edges)))


def component_labels(n_nodes: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Root id of each node's component (union by size, path halving)."""
    parent = list(range(n_nodes))
    size = [1] * n_nodes

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
    return [find(x) for x in range(n_nodes)]
