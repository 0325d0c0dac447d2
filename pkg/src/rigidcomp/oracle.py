"""Ground-truth cross-checks for the pebble-game engine.

Two independent routes:
  - exhaustive combinatorial checks for tiny graphs (subset enumeration over
    bitmasks, plus a greedy independent-set construction justified by the
    matroid property of (2,3)-sparse edge sets), and
  - a randomized rigidity-matrix rank test that scales to moderate n with
    one-sided (false-negative) error.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graphs import Graph

SPARSE_ENUM_LIMIT = 20
RIGID_ENUM_LIMIT = 8
RANK_TOLERANCE = 1e-8


class OracleLimitError(ValueError):
    """Instance too large for exhaustive checking."""


def _induced_edge_counts(n: int, edges) -> list[int]:
    """cnt[mask] = number of edges with both endpoints in the bitmask."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    cnt = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        cnt[mask] = cnt[rest] + bin(adj[low] & rest).count("1")
    return cnt


def _edge_set_sparse(n: int, edges: list[tuple[int, int]]) -> bool:
    """(2,3)-sparsity of an explicit edge set, by checking every vertex
    subset (bitmask enumeration)."""
    cnt = _induced_edge_counts(n, edges)
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        if k >= 2 and cnt[mask] > 2 * k - 3:
            return False
    return True


def brute_is_sparse(g: Graph) -> bool:
    """Exhaustive (2,3)-sparsity check over all vertex subsets."""
    if g.n > SPARSE_ENUM_LIMIT:
        raise OracleLimitError(f"n={g.n} exceeds enumeration limit {SPARSE_ENUM_LIMIT}")
    return _edge_set_sparse(g.n, g.sorted_edges())


def _relabel(vertices: tuple[int, ...], edges) -> list[tuple[int, int]]:
    idx = {v: i for i, v in enumerate(vertices)}
    return [(idx[u], idx[v]) for u, v in edges]


def _subset_rigid(r: int, edges: list[tuple[int, int]]) -> bool:
    """Rigidity of a graph on r vertices (labels 0..r-1): does a (2,3)-sparse
    subset of 2r-3 edges exist?

    Edge sets that stay (2,3)-sparse form the independent sets of a matroid,
    so a single greedy pass over the edges reaches the maximum sparse subset
    size; no backtracking is needed.
    """
    if r < 2:
        return False
    need = 2 * r - 3
    if len(edges) < need:
        return False
    chosen: list[tuple[int, int]] = []
    for e in edges:
        trial = chosen + [e]
        if _edge_set_sparse(r, trial):
            chosen = trial
            if len(chosen) == need:
                return True
    return False


def brute_is_rigid(g: Graph) -> bool:
    """True iff some (2,3)-sparse subset of 2n-3 edges exists (such a subset
    is automatically spanning)."""
    if g.n > RIGID_ENUM_LIMIT:
        raise OracleLimitError(f"n={g.n} exceeds enumeration limit {RIGID_ENUM_LIMIT}")
    if g.n < 2:
        raise OracleLimitError(f"rigidity is undefined for n={g.n} < 2")
    return _subset_rigid(g.n, g.sorted_edges())


@dataclass(frozen=True)
class OracleVerdict:
    is_sparse: bool
    is_tight: bool
    is_rigid: bool
    components: frozenset[frozenset[int]]
    method: str


def brute_components(g: Graph) -> OracleVerdict:
    """Rigid components by definition: all inclusion-maximal vertex subsets
    whose induced subgraph is rigid."""
    if g.n > RIGID_ENUM_LIMIT:
        raise OracleLimitError(f"n={g.n} exceeds enumeration limit {RIGID_ENUM_LIMIT}")
    n = g.n
    edges = g.sorted_edges()
    cnt = _induced_edge_counts(n, edges)
    rigid_masks: list[int] = []
    for mask in range(1, 1 << n):
        r = bin(mask).count("1")
        if r < 2 or cnt[mask] < 2 * r - 3:
            continue
        verts = tuple(i for i in range(n) if mask >> i & 1)
        sub = _relabel(verts, (e for e in edges if mask >> e[0] & 1 and mask >> e[1] & 1))
        if _subset_rigid(r, sub):
            rigid_masks.append(mask)
    maximal = [
        m for m in rigid_masks
        if not any(m != o and m & o == m for o in rigid_masks)
    ]
    comps = frozenset(
        frozenset(i for i in range(n) if m >> i & 1) for m in maximal
    )
    sparse = g.n <= SPARSE_ENUM_LIMIT and brute_is_sparse(g)
    rigid = n >= 2 and _subset_rigid(n, edges)
    return OracleVerdict(
        is_sparse=sparse,
        is_tight=sparse and g.m == 2 * n - 3,
        is_rigid=rigid,
        components=comps,
        method="enumeration",
    )


def rigidity_matrix(g: Graph, coords: np.ndarray) -> np.ndarray:
    """m x 2n rigidity matrix at planar coordinates coords (shape (n, 2))."""
    R = np.zeros((g.m, 2 * g.n))
    for row, (i, j) in enumerate(g.sorted_edges()):
        d = coords[i] - coords[j]
        R[row, 2 * i : 2 * i + 2] = d
        R[row, 2 * j : 2 * j + 2] = -d
    return R


def rank_is_rigid(g: Graph, attempts: int = 3, seed: int = 0) -> bool:
    """Randomized generic-rigidity test: the graph is rigid iff the rigidity
    matrix at generic coordinates has rank 2n-3.

    Coordinates are drawn uniformly from [0, 1]^2; singular values below
    RANK_TOLERANCE times the largest count as zero.  Error is one-sided: a
    rigid graph can only be misjudged if every attempt draws degenerate
    coordinates, which has vanishing probability.
    """
    if g.n < 2:
        raise ValueError(f"rigidity is undefined for n={g.n} < 2")
    target = 2 * g.n - 3
    if g.m < target:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(max(1, attempts)):
        coords = rng.random((g.n, 2))
        s = np.linalg.svd(rigidity_matrix(g, coords), compute_uv=False)
        rank = int(np.sum(s > RANK_TOLERANCE * s[0])) if s.size else 0
        if rank == target:
            return True
    return False


def density_scan(g: Graph, a: float, max_size: int) -> list[frozenset[int]]:
    """All vertex subsets S with 2 <= |S| <= max_size whose induced edge count
    is at least a*|S|.  An empty result certifies the absence of dense ("bad")
    subgraphs up to that size."""
    if max_size > SPARSE_ENUM_LIMIT:
        raise OracleLimitError(f"max_size={max_size} exceeds limit {SPARSE_ENUM_LIMIT}")
    adj = g.adjacency()
    out: list[frozenset[int]] = []
    for size in range(2, min(max_size, g.n) + 1):
        for S in combinations(range(g.n), size):
            sset = set(S)
            induced = sum(len(adj[u] & sset) for u in S) // 2
            if induced >= a * size:
                out.append(frozenset(S))
    return out
