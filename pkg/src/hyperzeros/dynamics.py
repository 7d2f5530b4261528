"""Complex systematic-scan Glauber dynamics.

Two independent engines compute the same complex measures:

* dense propagation of a measure over all 2^n configurations, one
  heat-bath update per time step, and
* enumeration of every update word ``rho`` in {0, BOT}^T, each run through
  the deterministic decomposed update and weighted by its base mass.

Words are integers; bit ``j`` is the update at time ``t = -T + 1 + j`` and a
set bit means BOT (the adaptive branch). Configurations are bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .exact import ComplexMeasure, GuardError, as_weights, config_weights, independent_mask
from .hypergraph import Hypergraph, config_mask
from .region import model_params
from .witness import WitnessWindow, build_window, construct_2tree, scan_vertex, ts

DENSE_GUARD = 20
ENUM_GUARD = 22
ZERO, BOT = 0, 1
SUPPORT_TOL = 1e-14


class MarginalError(ValueError):
    """A heat-bath marginal is undefined for the given measure or weights."""


class ZeroOneViolation(AssertionError):
    """An event indicator differed inside a zero-one group."""


def baseline(lam) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-vertex base measure (b(0), b(1), b(BOT))."""
    lam = np.asarray(lam, dtype=complex)
    if np.any(lam == -1):
        raise MarginalError("lambda_v = -1 has no heat-bath marginal")
    return 1 / (1 + lam), np.zeros_like(lam), lam / (1 + lam)


def _blocked(H: Hypergraph, v: int, x: np.ndarray) -> np.ndarray:
    """Configurations in which some edge through v has every other vertex at 1."""
    out = np.zeros(x.shape, dtype=bool)
    for eid in H.incident[v]:
        rest = H.edge_masks[eid] & ~(1 << v)
        out |= (x & rest) == rest
    return out


def _dense(mu, n: int) -> np.ndarray:
    if isinstance(mu, ComplexMeasure):
        return mu.dense()
    arr = np.asarray(mu, dtype=complex)
    if arr.shape != (1 << n,):
        raise ValueError(f"measure has shape {arr.shape}, expected ({1 << n},)")
    return arr


def delta_measure(n: int, sigma) -> np.ndarray:
    out = np.zeros(1 << n, dtype=complex)
    out[config_mask(sigma)] = 1
    return out


class ScanChain:
    """Precomputed transition data for one (H, lambda) pair."""

    def __init__(self, H: Hypergraph, lam, guard: bool = True):
        if guard and H.n > DENSE_GUARD:
            raise GuardError(f"n={H.n} exceeds the dense-propagation guard {DENSE_GUARD}")
        self.H = H
        self.lam = as_weights(H, lam)
        self.b0, _, self.bbot = baseline(self.lam)
        x = np.arange(1 << H.n, dtype=np.int64)
        self.independent = independent_mask(H, x)
        self._base = []
        self._p1 = []
        for v in range(H.n):
            base = x[(x >> v) & 1 == 0]
            p1 = np.where(_blocked(H, v, base), 0, self.bbot[v])
            self._base.append(base)
            self._p1.append(p1)

    def check_support(self, mu: np.ndarray) -> None:
        stray = np.abs(mu[~self.independent])
        if stray.size and stray.max() > SUPPORT_TOL:
            raise MarginalError("measure puts mass on a configuration that is not independent")

    def step(self, mu: np.ndarray, t: int) -> np.ndarray:
        v = scan_vertex(t, self.H.n)
        base, p1 = self._base[v], self._p1[v]
        top = base | (1 << v)
        mass = mu[base] + mu[top]
        out = np.empty_like(mu)
        out[base] = mass * (1 - p1)
        out[top] = mass * p1
        return out

    def run(self, mu0, T: int, history: bool = False):
        mu = _dense(mu0, self.H.n)
        self.check_support(mu)
        trail = [mu]
        for t in range(-T + 1, 1):
            mu = self.step(mu, t)
            if history:
                trail.append(mu)
        return trail if history else mu


def step(mu, t: int, H: Hypergraph, lam) -> np.ndarray:
    chain = ScanChain(H, lam)
    mu = _dense(mu, H.n)
    chain.check_support(mu)
    return chain.step(mu, t)


def run_chain(mu0, T: int, H: Hypergraph, lam) -> np.ndarray:
    """Apply the updates at times -T+1, ..., 0 to mu0."""
    return ScanChain(H, lam).run(mu0, T)


def convergence_gap(mu1, mu2, T: int, H: Hypergraph, lam) -> float:
    chain = ScanChain(H, lam)
    return float(np.abs(chain.run(mu1, T) - chain.run(mu2, T)).sum())


# ------------------------------------------------------- word enumeration

def _check_T(T: int) -> None:
    if T > ENUM_GUARD:
        raise GuardError(f"T={T} exceeds the enumeration guard {ENUM_GUARD}")


def all_words(T: int) -> np.ndarray:
    _check_T(T)
    return np.arange(1 << T, dtype=np.int64)


def word_from_rho(rho: Iterable[int]) -> int:
    return sum(1 << j for j, r in enumerate(rho) if r == BOT)


def simulate_words(sigma_init, T: int, H: Hypergraph, words: np.ndarray) -> np.ndarray:
    """Final configurations for each word, started from sigma_init."""
    state = np.full(words.shape, config_mask(sigma_init), dtype=np.int64)
    for j in range(T):
        t = -T + 1 + j
        v = scan_vertex(t, H.n)
        bot = (words >> j) & 1 == 1
        up = bot & ~_blocked(H, v, state)
        state = (state & ~(1 << v)) | (up.astype(np.int64) << v)
    return state


def simulate_given_r(sigma_init, rho, H: Hypergraph) -> int:
    rho = list(rho)
    w = np.array([word_from_rho(rho)], dtype=np.int64)
    return int(simulate_words(sigma_init, len(rho), H, w)[0])


def word_masses(T: int, H: Hypergraph, lam, words: np.ndarray | None = None) -> np.ndarray:
    b0, _, bbot = baseline(as_weights(H, lam))
    words = all_words(T) if words is None else words
    mass = np.ones(words.shape, dtype=complex)
    for j in range(T):
        v = scan_vertex(-T + 1 + j, H.n)
        mass *= np.where((words >> j) & 1 == 1, bbot[v], b0[v])
    return mass


def r_mass(rho, H: Hypergraph, lam) -> complex:
    rho = list(rho)
    w = np.array([word_from_rho(rho)], dtype=np.int64)
    return complex(word_masses(len(rho), H, lam, w)[0])


def event_table(n: int, event: Iterable[int]) -> np.ndarray:
    tab = np.zeros(1 << n, dtype=bool)
    tab[np.fromiter((config_mask(e) for e in event), dtype=np.int64)] = True
    return tab


def event_measure_by_enumeration(sigma_init, T: int, event, H: Hypergraph, lam) -> complex:
    words = all_words(T)
    final = simulate_words(sigma_init, T, H, words)
    mass = word_masses(T, H, lam, words)
    return complex(mass[event_table(H.n, event)[final]].sum())


def support_configs(H: Hypergraph, lam) -> np.ndarray:
    """Independent sets with nonzero Gibbs weight."""
    x = np.arange(1 << H.n, dtype=np.int64)
    x = x[independent_mask(H, x)]
    return x[config_weights(x, as_weights(H, lam)) != 0]


def vbl(n: int, event) -> tuple[int, ...]:
    """Vertices whose flip can change membership in the event."""
    tab = event_table(n, event)
    x = np.arange(1 << n, dtype=np.int64)
    return tuple(v for v in range(n) if np.any(tab[x] != tab[x ^ (1 << v)]))


# ---------------------------------------------------------- bad structures

@dataclass(frozen=True)
class BadStructures:
    V_bad: frozenset[int]
    C_bad: frozenset[int]
    T_bad: frozenset[int]


def _time_masks(W: WitnessWindow) -> np.ndarray:
    T = W.T
    return np.array([sum(1 << (t + T - 1) for t in v.times) for v in W.vertices], dtype=np.int64)


def bad_structures(rho, S, H: Hypergraph, W: WitnessWindow) -> BadStructures:
    rho = list(rho)
    if len(rho) != W.T or tuple(sorted(set(S))) != W.S:
        raise ValueError("window was built for a different horizon or root set")
    word = word_from_rho(rho)
    tm = _time_masks(W)
    bad = {i for i, m in enumerate(tm) if word & int(m) == int(m)} | {W.root}
    comp = {W.root}
    stack = [W.root]
    while stack:
        x = stack.pop()
        for y in W.adj[x]:
            if y in bad and y not in comp:
                comp.add(y)
                stack.append(y)
    tree = construct_2tree(W.adjacency(), comp, W.root)
    return BadStructures(frozenset(bad), frozenset(comp), tree)


class WordAnalysis:
    """Every word of length T with its mass, bad component and bad 2-tree.

    Meant for desk-scale exhaustive checks (T <= 18 keeps memory modest).
    """

    def __init__(self, H: Hypergraph, lam, S, T: int):
        _check_T(T)
        self.H, self.T = H, T
        self.lam = as_weights(H, lam)
        self.S = tuple(sorted(set(S)))
        self.W = build_window(H, self.S, T)
        self.words = all_words(T)
        self.mass = word_masses(T, H, self.lam, self.words)
        self.threshold = T / (2 * H.n) - 2

    @cached_property
    def root_bits(self) -> np.ndarray:
        """The word restricted to the root timestamps, as a compact integer."""
        out = np.zeros(self.words.shape, dtype=np.int64)
        for i, t in enumerate(self.W.vertices[self.W.root].times):
            out |= ((self.words >> (t + self.T - 1)) & 1) << i
        return out

    @cached_property
    def initial_bits(self) -> np.ndarray:
        """The word on the first n timestamps."""
        return self.words & ((1 << self.H.n) - 1)

    @cached_property
    def _components(self) -> tuple[np.ndarray, list[frozenset[int]]]:
        W = self.W
        tm = _time_masks(W)
        bad = (self.words[:, None] & tm[None, :]) == tm[None, :]
        bad[:, W.root] = True
        A = np.zeros((len(W), len(W)), dtype=np.float32)
        for i, nb in enumerate(W.adj):
            A[i, list(nb)] = 1
        reach = np.zeros_like(bad)
        reach[:, W.root] = True
        active = np.arange(len(self.words))
        while active.size:
            r = reach[active]
            grown = r | (((r.astype(np.float32) @ A) > 0) & bad[active])
            changed = np.any(grown != r, axis=1)
            reach[active] = grown
            active = active[changed]
        packed = np.packbits(reach, axis=1)
        keys = np.ascontiguousarray(packed).view(np.dtype((np.void, packed.shape[1]))).ravel()
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        comps = [frozenset(np.flatnonzero(reach[i]).tolist()) for i in first]
        return inverse.ravel(), comps

    @property
    def comp_id(self) -> np.ndarray:
        return self._components[0]

    @property
    def components(self) -> list[frozenset[int]]:
        return self._components[1]

    @cached_property
    def trees(self) -> list[frozenset[int]]:
        adj = self.W.adjacency()
        return [construct_2tree(adj, c, self.W.root) for c in self.components]

    @cached_property
    def tree_size(self) -> np.ndarray:
        sizes = np.array([len(t) for t in self.trees], dtype=np.int64)
        return sizes[self.comp_id]

    @property
    def small(self) -> np.ndarray:
        return self.tree_size <= self.threshold

    @cached_property
    def supports(self) -> np.ndarray:
        return support_configs(self.H, self.lam)

    @cached_property
    def finals(self) -> np.ndarray:
        """(initial state, word) -> final configuration."""
        return np.stack([simulate_words(s, self.T, self.H, self.words) for s in self.supports])

    def witness_mask(self, event) -> np.ndarray:
        """Words for which the event outcome is the same from every initial state."""
        ind = event_table(self.H.n, event)[self.finals]
        return ind.min(axis=0) == ind.max(axis=0)

    def identical_finals(self) -> np.ndarray:
        """Words that are witnesses for every elementary event at once."""
        return np.all(self.finals == self.finals[:1], axis=0)

    def zero_one_report(self, event) -> dict:
        """Count groups and indicator violations for both zero-one laws."""
        ind = event_table(self.H.n, event)[self.finals]
        nroot = len(self.W.vertices[self.W.root].times)
        small = self.small
        out = {"small_groups": 0, "small_violations": 0, "large_groups": 0, "large_violations": 0}
        key = self.comp_id.astype(np.int64) << nroot | self.root_bits
        if small.any():
            k_s = key[small]
            lo = ind[:, small].min(axis=0)
            hi = ind[:, small].max(axis=0)
            out["small_groups"], out["small_violations"] = _group_violations(k_s, lo, hi)
        large = ~small
        if large.any():
            k_l = key[large] << self.H.n | self.initial_bits[large]
            groups = 0
            for row in ind[:, large]:
                g, v = _group_violations(k_l, row, row)
                groups = max(groups, g)
                out["large_violations"] += v
            out["large_groups"] = groups
        return out

    def zero_one_value(self, event, comp: frozenset[int], root_bits: int,
                       initial_bits: int | None = None, sigma_index: int | None = None) -> int:
        """Indicator value shared by a group, raising on disagreement."""
        ids = [i for i, c in enumerate(self.components) if c == comp]
        if not ids:
            raise KeyError("component never occurs")
        sel = (self.comp_id == ids[0]) & (self.root_bits == root_bits)
        if initial_bits is not None:
            sel &= self.initial_bits == initial_bits
        if not np.any(self.mass[sel] != 0):
            raise ValueError("conditioning group has zero measure")
        ind = event_table(self.H.n, event)[self.finals][:, sel]
        if sigma_index is not None:
            ind = ind[sigma_index : sigma_index + 1]
        if ind.min() != ind.max():
            raise ZeroOneViolation("event indicator varies inside the group")
        return int(ind.flat[0])

    def modulus_sums(self) -> list[tuple[frozenset[int], float, int]]:
        """(tree, sum over components of |mass(C_bad=C, root all BOT)|, tree size)."""
        root_all = (1 << len(self.W.vertices[self.W.root].times)) - 1
        sel = self.root_bits == root_all
        comp_mass = np.zeros(len(self.components), dtype=complex)
        np.add.at(comp_mass, self.comp_id[sel], self.mass[sel])
        by_tree: dict[frozenset[int], float] = {}
        for c, m in enumerate(comp_mass):
            if m != 0:
                t = self.trees[c]
                by_tree[t] = by_tree.get(t, 0.0) + abs(m)
        return [(t, s, len(t)) for t, s in by_tree.items()]

    def large_tree_mass(self, sigma_init, tau) -> float:
        idx = int(np.flatnonzero(self.supports == config_mask(sigma_init))[0])
        sel = (self.finals[idx] == config_mask(tau)) & ~self.small
        return float(abs(self.mass[sel].sum()))


def _group_violations(keys: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> tuple[int, int]:
    uniq, inv = np.unique(keys, return_inverse=True)
    gmin = np.ones(len(uniq), dtype=bool)
    gmax = np.zeros(len(uniq), dtype=bool)
    np.logical_and.at(gmin, inv, lo)
    np.logical_or.at(gmax, inv, hi)
    return len(uniq), int(np.sum(gmin != gmax))


def is_witness(rho, event, H: Hypergraph, lam) -> bool:
    rho = list(rho)
    T = len(rho)
    w = np.array([word_from_rho(rho)], dtype=np.int64)
    tab = event_table(H.n, event)
    outs = {bool(tab[simulate_words(s, T, H, w)[0]]) for s in support_configs(H, lam)}
    return len(outs) <= 1


def modulus_alpha(H: Hypergraph, lam) -> float:
    return model_params(H, lam).alpha


def root_timestamps(S, n: int) -> tuple[int, ...]:
    return ts(S, 0, n)
