"""Timestamps, finite witness-graph windows and 2-trees.

Time ``t`` (any integer) updates vertex ``t mod n`` (non-negative remainder).
A window of horizon ``T`` covers times ``-T+1..0``. Its vertices are the
timestamp sets ``TS(e, t)`` lying inside the window, plus the root
``TS(S, 0)``; two vertices are adjacent when they share a timestamp.

Graphs handed to the 2-tree routines are plain adjacency mappings
``node -> set(node)`` so the same code serves windows and abstract fixtures.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .hypergraph import Hypergraph

ROOT = -1


def scan_vertex(t: int, n: int) -> int:
    """0-based vertex updated at time t."""
    return t % n


def pred(u: int, t: int, n: int) -> int:
    """Latest time s <= t at which vertex u (0-based) is updated."""
    return t - ((t - u) % n)


def ts(U: Iterable[int], t: int, n: int) -> tuple[int, ...]:
    U = list(U)
    if not U:
        raise ValueError("timestamp set of an empty vertex set")
    return tuple(sorted(pred(u, t, n) for u in U))


@dataclass(frozen=True)
class TsVertex:
    times: tuple[int, ...]
    origin: int  # edge id, or ROOT
    anchor: int = 0

    @property
    def tmin(self) -> int:
        return self.times[0]

    def sort_key(self):
        return (self.tmin, self.origin, self.times)


@dataclass(frozen=True)
class WitnessWindow:
    n: int
    T: int
    S: tuple[int, ...]
    vertices: tuple[TsVertex, ...]
    adj: tuple[frozenset[int], ...]
    root: int

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(enumerate(self.adj))

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def csv_rows(self) -> list[str]:
        rows = []
        for i, v in enumerate(self.vertices):
            origin = "root" if i == self.root else f"e{v.origin}@{v.anchor}"
            rows.append(",".join([str(i), origin, *map(str, v.times)]))
        return rows


def build_window(H: Hypergraph, S: Sequence[int], T: int) -> WitnessWindow:
    n = H.n
    if T < n:
        raise ValueError(f"horizon T={T} must be at least n={n}")
    S = tuple(sorted(set(S)))
    lo = -T + 1
    root = TsVertex(ts(S, 0, n), ROOT, 0)
    by_times: dict[tuple[int, ...], TsVertex] = {root.times: root}
    for eid, e in enumerate(H.edges):
        for t in range(0, lo - 1, -1):
            times = ts(e, t, n)
            if times[0] < lo:
                break  # earlier anchors only move further back
            by_times.setdefault(times, TsVertex(times, eid, t))
    verts = sorted(by_times.values(), key=TsVertex.sort_key)
    index = {v.times: i for i, v in enumerate(verts)}
    holders: dict[int, list[int]] = {}
    for i, v in enumerate(verts):
        for t in v.times:
            holders.setdefault(t, []).append(i)
    adj: list[set[int]] = [set() for _ in verts]
    for group in holders.values():
        for i in group:
            adj[i].update(group)
    for i, a in enumerate(adj):
        a.discard(i)
    return WitnessWindow(n, T, S, tuple(verts), tuple(frozenset(a) for a in adj), index[root.times])


def degree_bounds(H: Hypergraph, s_size: int) -> tuple[int, int]:
    """(non-root bound, root bound)."""
    d, k = H.delta, H.k_max
    return 2 * d * k * k - 2, 2 * d * k * s_size - 1


def degree_violations(H: Hypergraph, W: WitnessWindow) -> list[tuple[int, int, int]]:
    """(vertex index, degree, bound) for every vertex over its bound."""
    nonroot, rootb = degree_bounds(H, len(W.S))
    out = []
    for i in range(len(W)):
        b = rootb if i == W.root else nonroot
        if W.degree(i) > b:
            out.append((i, W.degree(i), b))
    return out


# ------------------------------------------------------------------ 2-trees

def _bfs(adj: Mapping, sources: Iterable, within=None) -> dict:
    dist = {s: 0 for s in sources}
    q = deque(dist)
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in dist and (within is None or y in within):
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def construct_2tree(adj: Mapping[Hashable, Iterable], component: Iterable, root, key=None) -> frozenset:
    """Greedy maximal 2-tree of the induced subgraph on ``component``.

    Repeatedly adds the remaining vertex closest to the current tree (ties by
    ``key``, default natural order) and discards its closed neighbourhood.
    """
    comp = set(component)
    if root not in comp:
        raise ValueError("root is not in the component")
    key = key or (lambda x: x)
    tree = {root}
    remaining = comp - {root} - set(adj[root])
    while remaining:
        dist = _bfs(adj, tree, within=comp)
        reachable = [u for u in remaining if u in dist]
        if not reachable:
            break  # component was not connected
        u = min(reachable, key=lambda x: (dist[x], key(x)))
        tree.add(u)
        remaining -= {u}
        remaining -= set(adj[u])
    return frozenset(tree)


def is_two_tree(adj: Mapping, members: Iterable) -> bool:
    members = set(members)
    if not members:
        return False
    for x in members:
        if set(adj[x]) & members:
            return False
    start = next(iter(members))
    seen = {start}
    q = deque([start])
    while q:
        x = q.popleft()
        for y in _square_neighbours(adj, x):
            if y in members and y not in seen:
                seen.add(y)
                q.append(y)
    return seen == members


def _square_neighbours(adj: Mapping, x) -> set:
    out = set(adj[x])
    for y in adj[x]:
        out.update(adj[y])
    out.discard(x)
    return out


def enumerate_2trees(adj: Mapping, root, s_max: int) -> list[frozenset]:
    """Every 2-tree that contains ``root`` and has at most ``s_max`` members."""
    if s_max < 1:
        return []
    sq = {}

    def square(x):
        if x not in sq:
            sq[x] = _square_neighbours(adj, x)
        return sq[x]

    level = {frozenset([root])}
    found = list(level)
    for _ in range(s_max - 1):
        nxt = set()
        for tree in level:
            blocked = set(tree)
            for x in tree:
                blocked.update(adj[x])
            cand = set()
            for x in tree:
                cand.update(square(x))
            for c in cand - blocked:
                nxt.add(tree | {c})
        found.extend(sorted(nxt, key=lambda s: sorted(map(repr, s))))
        level = nxt
        if not level:
            break
    return found


def log_tree_count_bound(i: int, delta: int, k: int, s_size: int) -> float:
    """log of (e(D2+i-2))^(D2-1) (e D1)^(i-1), D1=4 delta^2 k^4, D2=4 delta^2 k^3 |S|."""
    d1 = 4 * delta**2 * k**4
    d2 = 4 * delta**2 * k**3 * s_size
    first = (d2 - 1) * (1 + math.log(d2 + i - 2)) if d2 > 1 else 0.0
    return first + (i - 1) * (1 + math.log(d1)) if d1 > 0 else first


def log_tree_count_bound_small_root(i: int, delta: int, k: int) -> float:
    """log of (e D1)^(i-1), valid when |S| <= k."""
    d1 = 4 * delta**2 * k**4
    return (i - 1) * (1 + math.log(d1)) if d1 > 0 else 0.0
