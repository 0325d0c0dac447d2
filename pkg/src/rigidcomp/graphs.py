"""Simple undirected graphs: construction, seeded G(n, p) sampling, edge-list I/O.

Vertices are dense integer labels 0..n-1.  Graphs are immutable after
construction; mutation-style operations return a new Graph.
"""

from __future__ import annotations

import math
from io import StringIO
from pathlib import Path
from typing import IO, Iterable

import numpy as np

# Recorded in experiment output so runs are replayable.
RNG_NAME = "numpy.random.Generator(PCG64)"
RNG_VERSION = np.__version__


class GraphError(ValueError):
    """Base class for graph construction and parsing errors."""


class SelfLoopError(GraphError):
    """An edge's endpoints coincide."""


class DuplicateEdgeError(GraphError):
    """An edge was added twice."""


class VertexRangeError(GraphError):
    """An endpoint is outside [0, n)."""


class EdgeListParseError(GraphError):
    """Malformed edge-list text."""


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        self.n = n
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            e = self._check_edge(n, u, v)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
        self._edges = frozenset(seen)

    @staticmethod
    def _check_edge(n: int, u: int, v: int) -> tuple[int, int]:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        return _canon(u, v)

    @classmethod
    def _from_trusted(cls, n: int, edges: set[tuple[int, int]]) -> "Graph":
        # Internal fast path; caller guarantees canonical, valid edges.
        g = cls.__new__(cls)
        g.n = n
        g._edges = frozenset(edges)
        return g

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self._edges

    def add_edge(self, u: int, v: int) -> "Graph":
        e = self._check_edge(self.n, u, v)
        if e in self._edges:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        return Graph._from_trusted(self.n, set(self._edges) | {e})

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays in sorted edge order (u[i] < v[i])."""
        es = self.sorted_edges()
        if not es:
            return (np.empty(0, np.int64), np.empty(0, np.int64))
        a = np.asarray(es, dtype=np.int64)
        return a[:, 0].copy(), a[:, 1].copy()

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def new_graph(n: int) -> Graph:
    """Graph with n vertices and no edges."""
    return Graph(n)


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p): each of the C(n, 2) edges present independently with
    probability p.  Deterministic given (n, p, seed).

    Uses the geometric-skip method so runtime is O(n + m) rather than O(n^2),
    which matters for p = c/n at large n.
    """
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise GraphError(f"edge probability must be in [0, 1], got {p}")
    edges: set[tuple[int, int]] = set()
    if p >= 1.0:
        edges = {(u, v) for v in range(n) for u in range(v)}
        return Graph._from_trusted(n, edges)
    if p <= 0.0 or n < 2:
        return Graph._from_trusted(n, edges)
    rng = np.random.default_rng(seed)
    lp = math.log1p(-p)
    # Skip a Geometric(p)-distributed number of pairs between included edges.
    v = 1
    w = -1
    max_pairs = n * (n - 1) // 2
    while v < n:
        skip = math.log(1.0 - rng.random()) / lp
        # tiny p can push the skip past every remaining pair (or to inf)
        if skip >= max_pairs:
            break
        w += 1 + int(skip)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.add((w, v))
    return Graph._from_trusted(n, edges)


def count_triangles(g: Graph) -> int:
    """Exact number of 3-cliques."""
    adj = g.adjacency()
    total = 0
    for u, v in g.edges:
        total += len(adj[u] & adj[v])
    return total // 3


def write_edge_list(g: Graph, dest: str | Path | IO[str]) -> None:
    """Write the text interchange format: header "n m", then one "u v" line
    per edge with u < v, in sorted order."""
    lines = [f"{g.n} {g.m}\n"]
    lines.extend(f"{u} {v}\n" for u, v in g.sorted_edges())
    text = "".join(lines)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text)
    else:
        dest.write(text)


def _parse_int_pair(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EdgeListParseError(f"line {lineno}: expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListParseError(
            f"line {lineno}: expected two integers, got {line!r}"
        ) from None


def read_edge_list(src: str | Path | IO[str]) -> Graph:
    """Read the format written by :func:`write_edge_list`.

    Raises EdgeListParseError for malformed text and the specific
    VertexRangeError / SelfLoopError / DuplicateEdgeError for bad edges.
    """
    if isinstance(src, (str, Path)):
        text = Path(src).read_text()
    else:
        text = src.read()
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise EdgeListParseError("missing header line")
    n, m = _parse_int_pair(lines[0], 1)
    if n < 0 or m < 0:
        raise EdgeListParseError(f"header declares negative counts: {n} {m}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise EdgeListParseError(
            f"header declares {m} edges but file has {len(body)} edge lines"
        )
    edges = []
    for i, ln in enumerate(body, start=2):
        u, v = _parse_int_pair(ln, i)
        if u >= v:
            raise EdgeListParseError(f"line {i}: edges must satisfy u < v, got {ln!r}")
        edges.append((u, v))
    return Graph(n, edges)


def edge_list_str(g: Graph) -> str:
    buf = StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()
