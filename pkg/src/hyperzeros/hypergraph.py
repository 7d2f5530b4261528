"""Hypergraph container, validation, random generation and JSON I/O.

Vertices are ``0..n-1``. Edges are stored as strictly increasing tuples of
vertex ids, in input order (edge ids are positions in that order).
Configurations are encoded as Python ints / numpy integer bitmasks with
bit ``v`` holding the spin of vertex ``v``.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence


class StructureError(ValueError):
    """Malformed hypergraph input (bad ids, unsorted edge, duplicate edge)."""


class GenerationError(RuntimeError):
    """Random instance generation gave up after too many rejections."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise StructureError(f"n must be a non-negative int, got {self.n!r}")
        edges = tuple(tuple(int(v) for v in e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, e in enumerate(edges):
            if not e:
                raise StructureError(f"edge {i} is empty")
            if any(v < 0 or v >= self.n for v in e):
                raise StructureError(f"edge {i} = {list(e)} has a vertex outside 0..{self.n - 1}")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise StructureError(f"edge {i} = {list(e)} is not strictly increasing")
            if e in seen:
                raise StructureError(f"edge {i} = {list(e)} is a duplicate")
            seen.add(e)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @property
    def k_max(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @property
    def delta(self) -> int:
        return max(self.degrees, default=0)

    @property
    def is_uniform(self) -> bool:
        return len({len(e) for e in self.edges}) <= 1

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids through each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                nb[v].update(e)
        for v in range(self.n):
            nb[v].discard(v)
        return tuple(frozenset(s) for s in nb)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    k_max: int
    delta: int
    k_uniform: bool
    degrees: tuple[int, ...] = field(repr=False)


def validate(n: int, edges: Iterable[Sequence[int]]) -> StructureReport:
    """Build and check a hypergraph, returning its structural summary."""
    H = Hypergraph(n, tuple(tuple(e) for e in edges))
    return report(H)


def report(H: Hypergraph) -> StructureReport:
    return StructureReport(H.n, H.m, H.k_max, H.delta, H.is_uniform, H.degrees)


def config_mask(sigma) -> int:
    """Accept an int bitmask or a 0/1 sequence indexed by vertex."""
    if isinstance(sigma, (int,)) or hasattr(sigma, "__index__"):
        return int(sigma)
    return sum(1 << v for v, s in enumerate(sigma) if s)


def config_bits(sigma: int, n: int) -> str:
    """Render a configuration with vertex 0 first, e.g. ``'101'``."""
    return "".join("1" if (sigma >> v) & 1 else "0" for v in range(n))


def is_independent(H: Hypergraph, sigma) -> bool:
    s = config_mask(sigma)
    return all((s & em) != em for em in H.edge_masks)


def prefix(H: Hypergraph, i: int) -> Hypergraph:
    """Same vertex set, first ``i`` edges."""
    if not 0 <= i <= H.m:
        raise IndexError(f"prefix index {i} outside 0..{H.m}")
    return Hypergraph(H.n, H.edges[:i])


def random_instance(n: int, m: int, k: int, delta_cap: int, seed: int) -> Hypergraph:
    """Uniform k-subsets accepted while they keep every degree <= delta_cap.

    Duplicates and cap violations are rejected; 1000*m consecutive rejections
    raise GenerationError.
    """
    if k > n or k < 1:
        raise ValueError(f"edge size {k} incompatible with n={n}")
    rng = random.Random(seed)
    deg = [0] * n
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    misses = 0
    while len(edges) < m:
        e = tuple(sorted(rng.sample(range(n), k)))
        if e in seen or any(deg[v] >= delta_cap for v in e):
            misses += 1
            if misses >= 1000 * max(m, 1):
                raise GenerationError(
                    f"gave up after {misses} rejections with {len(edges)}/{m} edges placed"
                )
            continue
        misses = 0
        seen.add(e)
        edges.append(e)
        for v in e:
            deg[v] += 1
    return Hypergraph(n, tuple(edges))


def hyper_distance(H: Hypergraph, u: int, v: int) -> float:
    """Shortest path length where consecutive vertices share an edge."""
    if u == v:
        return 0
    dist = {u: 0}
    q = deque([u])
    while q:
        x = q.popleft()
        for y in H.neighbours[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                q.append(y)
    return math.inf


def distances_from(H: Hypergraph, u: int) -> dict[int, int]:
    dist = {u: 0}
    q = deque([u])
    while q:
        x = q.popleft()
        for y in H.neighbours[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


# ---------------------------------------------------------------- JSON I/O

def hypergraph_from_dict(d: dict) -> Hypergraph:
    if not isinstance(d, dict) or "n" not in d or "edges" not in d:
        raise StructureError("hypergraph JSON needs keys 'n' and 'edges'")
    if not isinstance(d["edges"], list) or not all(isinstance(e, list) for e in d["edges"]):
        raise StructureError("'edges' must be a list of integer lists")
    for e in d["edges"]:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in e):
            raise StructureError(f"edge {e} contains a non-integer")
    if not isinstance(d["n"], int) or isinstance(d["n"], bool):
        raise StructureError("'n' must be an integer")
    return Hypergraph(d["n"], tuple(tuple(e) for e in d["edges"]))


def load_hypergraph(path: str | Path) -> Hypergraph:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid JSON in {path}: {exc}") from exc
    return hypergraph_from_dict(d)


def save_hypergraph(H: Hypergraph, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(H.to_dict(), fh)


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(a, (int, float)) for a in x):
        return complex(x[0], x[1])
    raise StructureError(f"expected a number or [re, im], got {x!r}")


def load_json(text: str) -> Hypergraph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"invalid JSON: {exc}") from exc
    return hypergraph_from_dict(d)


def save_json(H: Hypergraph) -> str:
    return json.dumps(H.to_dict())
