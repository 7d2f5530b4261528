"""Deterministic approximate counter built on bounded percolation.

Each ratio R_i = Z(H_{i+1}) / Z(H_i) equals one minus the stationary
probability that the next edge is fully occupied. That probability is
expanded over update values revealed backwards in time: a time whose value
is 0 settles immediately, a BOT time must look at its incident edges, and an
edge whose other timestamps are all BOT forms a bad witness vertex that must
be resolved recursively. Branches that grow more than ``gamma`` bad vertices
are dropped, which is where the 2^-gamma error comes from.

Instead of enumerating whole words, the search branches lazily at each fresh
reveal, so each node carries the product mass of the values revealed so far
and unrevealed positions contribute a factor of one. Optionally, nodes whose
mass drops under ``prune_tol`` are dropped with a rigorous bound on what
their subtree could have contributed.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .exact import as_weights
from .hypergraph import Hypergraph
from .region import certify
from .witness import pred

ZERO, BOT = 0, 1


def choose_gamma(m: int, eta: float, eps: float) -> int:
    if not 0 < eps < 1 or not 0 <= eta < 1:
        raise ValueError("need 0 < eps < 1 and 0 <= eta < 1")
    if m == 0:
        return 1
    return math.ceil(math.log2(4 * m / ((1 - eta) * eps))) + 1


def kappa(k: int, delta: int, gamma: int) -> int:
    return 4 * delta**2 * k**4 * gamma


def word_length(k: int, delta: int, gamma: int) -> int:
    return gamma * k * 2 * delta * k * k


@dataclass
class _Node:
    r: dict
    val: dict
    mass: complex
    b: int
    cnt: int


@dataclass
class MarginalResult:
    R_star: complex
    hit: complex
    miss: complex
    aborted: complex
    pruned: complex
    pruned_bound: float
    leaves: int
    reveals: int
    gamma: int
    kappa: int
    word_length: int

    @property
    def total_mass(self) -> complex:
        return self.hit + self.miss + self.aborted + self.pruned


class _Search:
    def __init__(self, H: Hypergraph, lam: np.ndarray, i: int, gamma: int, prune_tol: float):
        self.n = H.n
        self.edges = H.edges[:i]
        self.incident = [[eid for eid in H.incident[v] if eid < i] for v in range(H.n)]
        self.target = H.edges[i]
        self.b0 = 1 / (1 + lam)
        self.bbot = lam / (1 + lam)
        k, delta = max(H.k_max, 1), max(H.delta, 1)
        self.gamma = gamma
        self.L = word_length(k, delta, gamma)
        self.kappa = kappa(k, delta, gamma)
        self.tol = prune_tol
        self.log_M = float(np.log(np.max(np.abs(self.b0) + np.abs(self.bbot))))
        self.hit = self.miss = self.aborted = self.pruned = 0j
        self.pruned_bound = 0.0
        self.leaves = 0
        self.reveals = 0

    # Each routine takes a continuation k(value, node); leaves add their mass
    # to exactly one of hit / miss / aborted / pruned.

    def reveal(self, t, nd: _Node, k):
        if t in nd.r:
            return k(nd.r[t], nd)
        if nd.cnt >= self.L:
            self.aborted += nd.mass
            self.leaves += 1
            return
        v = t % self.n
        for value, w in ((ZERO, self.b0[v]), (BOT, self.bbot[v])):
            if w == 0:
                continue
            mass = nd.mass * w
            self.reveals += 1
            if abs(mass) < self.tol:
                self.pruned += mass
                remaining = self.L - nd.cnt - 1
                self.pruned_bound += abs(mass) * math.exp(max(self.log_M, 0.0) * remaining)
                self.leaves += 1
                continue
            r = dict(nd.r)
            r[t] = value
            k(value, _Node(r, nd.val, mass, nd.b, nd.cnt + 1))

    def resolve(self, t, nd: _Node, k):
        """Spin at time t (already revealed) passed to k."""
        if t in nd.val:
            return k(nd.val[t], nd)
        if nd.r[t] == ZERO:
            return k(0, _settle(nd, t, 0))
        v = t % self.n
        return self._edges(t, v, 0, nd, k)

    def _edges(self, t, v, j, nd, k):
        inc = self.incident[v]
        if j == len(inc):
            return k(1, _settle(nd, t, 1))
        e = self.edges[inc[j]]
        others = sorted(pred(u, t, self.n) for u in e if u != v)

        def next_edge(nd2):
            return self._edges(t, v, j + 1, nd2, k)

        def reveal_from(idx, nd2):
            if idx == len(others):
                if nd2.b + 1 > self.gamma:
                    self.aborted += nd2.mass
                    self.leaves += 1
                    return
                grown = _Node(nd2.r, nd2.val, nd2.mass, nd2.b + 1, nd2.cnt)
                return resolve_from(0, grown)

            def after(value, nd3):
                if value == ZERO:
                    return next_edge(nd3)
                return reveal_from(idx + 1, nd3)

            return self.reveal(others[idx], nd2, after)

        def resolve_from(idx, nd2):
            if idx == len(others):
                return k(0, _settle(nd2, t, 0))  # every other vertex is 1: blocked

            def after(spin, nd3):
                if spin == 0:
                    return next_edge(nd3)
                return resolve_from(idx + 1, nd3)

            return self.resolve(others[idx], nd2, after)

        return reveal_from(0, nd)

    def run(self) -> None:
        roots = sorted(pred(u, 0, self.n) for u in self.target)
        start = _Node({}, {}, 1 + 0j, 0, 0)

        def reveal_root(idx, nd):
            if idx == len(roots):
                return resolve_root(0, nd)

            def after(value, nd2):
                if value == ZERO:
                    self.miss += nd2.mass
                    self.leaves += 1
                    return
                return reveal_root(idx + 1, nd2)

            return self.reveal(roots[idx], nd, after)

        def resolve_root(idx, nd):
            if idx == len(roots):
                self.hit += nd.mass
                self.leaves += 1
                return

            def after(spin, nd2):
                if spin == 0:
                    self.miss += nd2.mass
                    self.leaves += 1
                    return
                return resolve_root(idx + 1, nd2)

            return self.resolve(roots[idx], nd, after)

        reveal_root(0, start)


def _settle(nd: _Node, t: int, spin: int) -> _Node:
    val = dict(nd.val)
    val[t] = spin
    return _Node(nd.r, val, nd.mass, nd.b, nd.cnt)


def approx_marginal(H: Hypergraph, lam, i: int, gamma: int, prune_tol: float | None = None) -> MarginalResult:
    """Estimate R_i from the edges before i and target edge i.

    ``prune_tol`` defaults to 2^-gamma * 1e-6; pass 0 to disable pruning.
    """
    if not 0 <= i < H.m:
        raise IndexError(f"edge index {i} outside 0..{H.m - 1}")
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    lam = as_weights(H, lam)
    if np.any(lam == -1):
        raise ZeroDivisionError("lambda_v = -1 is not allowed")
    tol = 2.0**-gamma * 1e-6 if prune_tol is None else prune_tol
    s = _Search(H, lam, i, gamma, tol)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        s.run()
    finally:
        sys.setrecursionlimit(old)
    return MarginalResult(
        R_star=1 - s.hit,
        hit=s.hit,
        miss=s.miss,
        aborted=s.aborted,
        pruned=s.pruned,
        pruned_bound=s.pruned_bound,
        leaves=s.leaves,
        reveals=s.reveals,
        gamma=gamma,
        kappa=s.kappa,
        word_length=s.L,
    )


@dataclass
class CountResult:
    Z_hat: complex
    gamma: int
    certified: bool
    ratios: list[complex] = field(default_factory=list)
    details: list[MarginalResult] = field(default_factory=list, repr=False)
    pruned_bound: float = 0.0

    def to_dict(self) -> dict:
        return {
            "Z_hat": [self.Z_hat.real, self.Z_hat.imag],
            "gamma": self.gamma,
            "certified": self.certified,
            "per_edge_ratios": [[r.real, r.imag] for r in self.ratios],
            "pruned_bound": self.pruned_bound,
        }


def approx_partition(H: Hypergraph, lam, eps: float, eta: float, gamma: int | None = None,
                     region_eps: float | None = None, prune_tol: float | None = None) -> CountResult:
    """Z_hat = prod(1 + lambda_v) * prod R*_i.

    ``certified`` is True when lambda lies in the counting region for ``eta``
    with stadium half-width ``region_eps`` (default ``eps``).
    """
    lam = as_weights(H, lam)
    g = choose_gamma(H.m, eta, eps) if gamma is None else gamma
    rep = certify(H, lam, eps if region_eps is None else region_eps, eta=eta)
    z = complex(np.prod(1 + lam))
    ratios, details = [], []
    for i in range(H.m):
        res = approx_marginal(H, lam, i, g, prune_tol)
        ratios.append(res.R_star)
        details.append(res)
        z *= res.R_star
    return CountResult(z, g, rep.passed, ratios, details, sum(d.pruned_bound for d in details))
