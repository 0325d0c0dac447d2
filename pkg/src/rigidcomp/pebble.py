"""The (2,3)-pebble game: sparsity/tightness/rigidity decisions and
rigid-component decomposition.

Every vertex starts with 2 pebbles.  An edge (u, v) is accepted when 4 pebbles
can be gathered onto its endpoints (pebbles are pulled in by reversing
oriented paths); the accepted edge is oriented away from u, which pays one
pebble.  An edge that cannot gather 4 pebbles is redundant for sparsity and is
rejected.  Whenever an insertion leaves exactly 3 pebbles reachable from
{u, v}, the reach set of the failed search spans a well-constrained region:
it is recorded as a rigid block, and blocks are merged through a union-find
over edges (the 2|R|-3 oriented edges inside a reach set R all join the same
component).  After all edges are processed, the union-find classes are exactly
the rigid components, and every edge (accepted or rejected) lies in one class.

The accepted edge set is always (2,3)-sparse, so:
  - the graph is (2,3)-sparse  iff no edge is rejected,
  - the graph is rigid         iff 2n-3 edges are accepted.

The hot loops are numba-compiled; a decomposition of G(n, c/n) at n = 1e5
is O(n^2) worst case and fast in practice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numba import njit

from .graphs import Graph, GraphError


@njit(cache=True, nogil=True, inline="always")
def _uf_find(uf, x):
    root = x
    while uf[root] != root:
        root = uf[root]
    while uf[x] != root:
        nxt = uf[x]
        uf[x] = root
        x = nxt
    return root


@njit(cache=True, nogil=True)
def _find_and_move_pebble(target, excl, peb, out_v, out_e, stamp, cur, parent, stack):
    """DFS from `target` along oriented edges for a vertex with a free pebble
    (excluding `target` and `excl` as donors); on success, reverse the path
    and move the pebble onto `target`.  Returns True iff a pebble moved.

    Neighbors are visited in ascending label order so runs are deterministic.
    """
    top = 0
    stack[top] = target
    top += 1
    stamp[target] = cur
    found = np.int64(-1)
    while top > 0 and found < 0:
        top -= 1
        x = stack[top]
        a = out_v[x, 0]
        b = out_v[x, 1]
        if a >= 0 and b >= 0 and a > b:
            a, b = b, a
        # push larger first so the smaller label is explored first
        for y in (b, a):
            if y >= 0 and stamp[y] != cur:
                stamp[y] = cur
                parent[y] = x
                if y != excl and peb[y] > 0:
                    found = y
                    break
                stack[top] = y
                top += 1
    if found < 0:
        return False
    peb[found] -= 1
    child = found
    while child != target:
        par = parent[child]
        s = 0 if out_v[par, 0] == child else 1
        e = out_e[par, s]
        out_v[par, s] = -1
        out_e[par, s] = -1
        t = 0 if out_v[child, 0] < 0 else 1
        out_v[child, t] = par
        out_e[child, t] = e
        child = par
    peb[target] += 1
    return True


@njit(cache=True, nogil=True)
def _reach_scan(u, v, peb, out_v, stamp, cur, stack, reach):
    """Collect vertices reachable from {u, v} along oriented edges.

    Returns (has_free_pebble, count): has_free_pebble is True as soon as a
    vertex outside {u, v} with a pebble is reached (scan stops early); when it
    is False, reach[:count] holds the full closed reach set.
    """
    count = 0
    top = 0
    stack[top] = u
    top += 1
    stamp[u] = cur
    reach[count] = u
    count += 1
    if stamp[v] != cur:
        stack[top] = v
        top += 1
        stamp[v] = cur
        reach[count] = v
        count += 1
    while top > 0:
        top -= 1
        x = stack[top]
        for s in range(2):
            y = out_v[x, s]
            if y >= 0 and stamp[y] != cur:
                stamp[y] = cur
                reach[count] = y
                count += 1
                if peb[y] > 0:
                    return True, count
                stack[top] = y
                top += 1
    return False, count


@njit(cache=True, nogil=True)
def _tight_region(u, v, n, peb, out_v, stamp, cur, stack, offs, rin, region):
    """Vertices from which no free pebble (other than the 3 on {u, v}) is
    reachable.  Precondition: the forward scan from {u, v} found no pebble.
    By a counting argument this set is exactly the inclusion-maximal
    well-constrained region containing u and v.

    Computed as the complement of a multi-source reverse-edge search from all
    pebbled vertices outside {u, v}.  Fills region[:count], returns count.
    """
    # reverse adjacency (CSR) over the current orientation
    for x in range(n + 1):
        offs[x] = 0
    for x in range(n):
        for s in range(2):
            y = out_v[x, s]
            if y >= 0:
                offs[y + 1] += 1
    for x in range(n):
        offs[x + 1] += offs[x]
    for x in range(n):
        for s in range(2):
            y = out_v[x, s]
            if y >= 0:
                rin[offs[y]] = x
                offs[y] += 1
    for x in range(n, 0, -1):
        offs[x] = offs[x - 1]
    offs[0] = 0
    # mark everything that can reach a pebble
    top = 0
    for x in range(n):
        if peb[x] > 0 and x != u and x != v:
            stamp[x] = cur
            stack[top] = x
            top += 1
    while top > 0:
        top -= 1
        y = stack[top]
        for k in range(offs[y], offs[y + 1]):
            x = rin[k]
            if stamp[x] != cur:
                stamp[x] = cur
                stack[top] = x
                top += 1
    count = 0
    for x in range(n):
        if stamp[x] != cur:
            region[count] = x
            count += 1
    return count


@njit(cache=True, nogil=True)
def _pebble_run(n, eu, ev):
    """Play the full game over edges (eu[i], ev[i]) in order.

    Returns (accepted flags, component root per edge, final pebble counts).
    """
    m = eu.shape[0]
    peb = np.full(n, 2, np.int64)
    cap = max(n, 1)
    out_v = np.full((cap, 2), -1, np.int64)
    out_e = np.full((cap, 2), -1, np.int64)
    stamp = np.zeros(cap, np.int64)
    parent = np.empty(cap, np.int64)
    stack = np.empty(cap, np.int64)
    reach = np.empty(cap, np.int64)
    offs = np.zeros(cap + 1, np.int64)
    rin = np.empty(2 * cap, np.int64)
    accepted = np.zeros(m, np.uint8)
    uf = np.arange(max(m, 1))
    cur = np.int64(0)
    for i in range(m):
        u = eu[i]
        v = ev[i]
        # Gather up to 4 pebbles onto {u, v}; iterate to a fixpoint because a
        # successful gather for one endpoint can change reachability for the
        # other.
        progress = True
        while progress and (peb[u] < 2 or peb[v] < 2):
            progress = False
            while peb[u] < 2:
                cur += 1
                if _find_and_move_pebble(u, v, peb, out_v, out_e, stamp, cur, parent, stack):
                    progress = True
                else:
                    break
            while peb[v] < 2:
                cur += 1
                if _find_and_move_pebble(v, u, peb, out_v, out_e, stamp, cur, parent, stack):
                    progress = True
                else:
                    break
        if peb[u] == 2 and peb[v] == 2:
            accepted[i] = 1
            s = 0 if out_v[u, 0] < 0 else 1
            out_v[u, s] = v
            out_e[u, s] = i
            peb[u] = 1
        # Component detection: if no 4th pebble is reachable from {u, v}, the
        # edge lies in a well-constrained region.  For an accepted edge the
        # region may have just grown or merged, so recover it in full and
        # union its induced edges; a rejected edge falls inside an
        # already-recorded region, so unioning with the (closed) forward reach
        # set's induced edges is enough.
        cur += 1
        free, cnt = _reach_scan(u, v, peb, out_v, stamp, cur, stack, reach)
        if not free:
            if accepted[i] == 1:
                cur += 1
                cnt = _tight_region(u, v, n, peb, out_v, stamp, cur, stack, offs, rin, reach)
            ri = _uf_find(uf, i)
            for j in range(cnt):
                w = reach[j]
                for s in range(2):
                    e = out_e[w, s]
                    if e >= 0:
                        re = _uf_find(uf, e)
                        if re != ri:
                            uf[re] = ri
    roots = np.empty(m, np.int64)
    for i in range(m):
        roots[i] = _uf_find(uf, i)
    return accepted, roots, peb


@dataclass(frozen=True)
class RigidComponent:
    """One rigid component: its vertex span and the edges it covers."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def span(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def trivial(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class RigidDecomposition:
    """Partition of a graph's edges into rigid components.

    Isolated vertices belong to no component.  Components are sorted by their
    vertex tuples, so equal decompositions compare equal.
    """

    n: int
    m: int
    components: tuple[RigidComponent, ...]
    accepted_edges: int
    free_pebbles: int

    @cached_property
    def largest_span(self) -> int:
        return max((c.span for c in self.components), default=0)

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.components:
            hist[c.span] = hist.get(c.span, 0) + 1
        return dict(sorted(hist.items()))

    def vertex_sets(self) -> set[frozenset[int]]:
        return {frozenset(c.vertices) for c in self.components}

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "components": [
                {
                    "vertices": list(c.vertices),
                    "edge_count": c.edge_count,
                    "trivial": c.trivial,
                }
                for c in self.components
            ],
            "largest_span": self.largest_span,
            "size_histogram": {str(k): v for k, v in self.size_histogram().items()},
        }


def _run_game(g: Graph):
    edges = g.sorted_edges()
    eu, ev = g.edge_arrays()
    accepted, roots, peb = _pebble_run(g.n, eu, ev)
    return edges, accepted, roots, peb


def rigid_components(g: Graph) -> RigidDecomposition:
    """The unique decomposition into inclusion-maximal rigid induced
    subgraphs.  Every edge appears in exactly one component; single-edge
    (trivial) components are materialized explicitly."""
    edges, accepted, roots, peb = _run_game(g)
    groups: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        groups.setdefault(int(roots[i]), []).append(e)
    comps = []
    for es in groups.values():
        verts = sorted({w for e in es for w in e})
        comps.append(RigidComponent(tuple(verts), tuple(sorted(es))))
    comps.sort(key=lambda c: c.vertices)
    n_acc = int(accepted.sum())
    return RigidDecomposition(
        n=g.n,
        m=g.m,
        components=tuple(comps),
        accepted_edges=n_acc,
        free_pebbles=int(peb.sum()),
    )


def is_sparse_23(g: Graph) -> bool:
    """True iff every induced subgraph on n' >= 2 vertices has at most
    2n'-3 edges (no edge is rejected by the pebble game)."""
    _, accepted, _, _ = _run_game(g)
    return bool(accepted.all())


def is_tight_23(g: Graph) -> bool:
    """True iff g is (2,3)-sparse with exactly 2n-3 edges (a Laman graph)."""
    if g.n < 2:
        raise GraphError(f"tightness is undefined for n={g.n} < 2")
    return g.m == 2 * g.n - 3 and is_sparse_23(g)


def is_rigid(g: Graph) -> bool:
    """True iff g contains a spanning Laman subgraph (the pebble game
    accepts 2n-3 edges)."""
    if g.n < 2:
        raise GraphError(f"rigidity is undefined for n={g.n} < 2")
    _, accepted, _, _ = _run_game(g)
    return int(accepted.sum()) == 2 * g.n - 3


def henneberg1_extend(g: Graph, u: int, v: int) -> Graph:
    """Add a new vertex attached to the two existing vertices u and v.
    Requires g to be Laman; the result is again Laman."""
    if u == v:
        raise GraphError("attachment vertices must be distinct")
    if not (0 <= u < g.n) or not (0 <= v < g.n):
        raise GraphError(f"attachment vertices ({u}, {v}) out of range for n={g.n}")
    if not is_tight_23(g):
        raise GraphError("base graph is not Laman")
    w = g.n
    edges = set(g.edges)
    edges.add((u, w))
    edges.add((v, w))
    return Graph._from_trusted(g.n + 1, edges)


def largest_component_size(d: RigidDecomposition) -> int:
    """Maximum vertex span over components; 0 if there are none."""
    return d.largest_span
