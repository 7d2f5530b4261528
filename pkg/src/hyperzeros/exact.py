"""Brute-force ground truth over all 2^n configurations.

Everything here enumerates configurations as integers ``0..2^n-1`` in
chunks, so results do not depend on chunk size beyond float reassociation
inside numpy's pairwise sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .hypergraph import Hypergraph, config_bits, config_mask, is_independent, prefix

SIZE_GUARD = 26
CHUNK_BITS = 20
VANISH_RTOL = 1e-12


class GuardError(ValueError):
    """Instance is larger than the brute-force guard allows."""


class VanishingPartitionError(ArithmeticError):
    """|Z| is below 1e-12 times the sum of term magnitudes."""


def as_weights(H_or_n, values, name: str = "lambda") -> np.ndarray:
    """Broadcast a scalar or per-item sequence to a complex vector."""
    size = H_or_n if isinstance(H_or_n, int) else H_or_n.n
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 0:
        return np.full(size, complex(arr))
    if arr.shape != (size,):
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {size}")
    return arr


def _check_guard(n: int, guard: bool) -> None:
    if guard and n > SIZE_GUARD:
        raise GuardError(f"n={n} exceeds the enumeration guard of {SIZE_GUARD}")


def config_chunks(n: int) -> Iterator[np.ndarray]:
    total = 1 << n
    step = 1 << CHUNK_BITS
    for start in range(0, total, step):
        yield np.arange(start, min(total, start + step), dtype=np.int64)


def independent_mask(H: Hypergraph, x: np.ndarray) -> np.ndarray:
    ok = np.ones(x.shape, dtype=bool)
    for em in H.edge_masks:
        ok &= (x & em) != em
    return ok


def config_weights(x: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """prod_{v: bit v set} lam[v], vectorised over configurations."""
    w = np.ones(x.shape, dtype=complex)
    for v, lv in enumerate(lam):
        w = np.where((x >> v) & 1 == 1, w * lv, w)
    return w


def _ly_sums(H: Hypergraph, lam: np.ndarray, guard: bool) -> tuple[complex, float]:
    _check_guard(H.n, guard)
    z, mag = 0j, 0.0
    for x in config_chunks(H.n):
        x = x[independent_mask(H, x)]
        w = config_weights(x, lam)
        z += w.sum()
        mag += np.abs(w).sum()
    return complex(z), float(mag)


def _assert_nonvanishing(z: complex, mag: float) -> None:
    if abs(z) <= VANISH_RTOL * mag:
        raise VanishingPartitionError(f"|Z|={abs(z):.3e} vanishes against term mass {mag:.3e}")


def partition_ly(H: Hypergraph, lam, guard: bool = True) -> complex:
    return _ly_sums(H, as_weights(H, lam), guard)[0]


def term_magnitude(H: Hypergraph, lam, guard: bool = True) -> float:
    """Sum over independent sets of |prod lambda_v|."""
    return _ly_sums(H, as_weights(H, lam), guard)[1]


def partition_fs(H: Hypergraph, beta, guard: bool = True) -> complex:
    _check_guard(H.n, guard)
    beta = as_weights(H.m, beta, "beta")
    z = 0j
    for x in config_chunks(H.n):
        w = np.ones(x.shape, dtype=complex)
        for em, b in zip(H.edge_masks, beta):
            w = np.where((x & em) == em, w * b, w)
        z += w.sum()
    return complex(z)


@dataclass(frozen=True)
class ComplexMeasure:
    """Complex measure on {0,1}^n stored on its support."""

    n: int
    configs: np.ndarray
    weights: np.ndarray

    def total(self) -> complex:
        return complex(self.weights.sum())

    def get(self, sigma) -> complex:
        s = config_mask(sigma)
        idx = np.searchsorted(self.configs, s)
        if idx < len(self.configs) and self.configs[idx] == s:
            return complex(self.weights[idx])
        return 0j

    def as_dict(self) -> dict[int, complex]:
        return {int(c): complex(w) for c, w in zip(self.configs, self.weights)}

    def dense(self) -> np.ndarray:
        out = np.zeros(1 << self.n, dtype=complex)
        out[self.configs] = self.weights
        return out

    def to_csv_rows(self) -> list[str]:
        return [
            f"{config_bits(int(c), self.n)},{w.real:.12g},{w.imag:.12g}"
            for c, w in zip(self.configs, self.weights)
        ]


def gibbs(H: Hypergraph, lam, guard: bool = True) -> ComplexMeasure:
    lam = as_weights(H, lam)
    z, mag = _ly_sums(H, lam, guard)
    _assert_nonvanishing(z, mag)
    cs, ws = [], []
    for x in config_chunks(H.n):
        x = x[independent_mask(H, x)]
        w = config_weights(x, lam)
        keep = w != 0
        cs.append(x[keep])
        ws.append(w[keep] / z)
    return ComplexMeasure(H.n, np.concatenate(cs), np.concatenate(ws))


def conditional_marginal(H: Hypergraph, lam, v: int, tau) -> tuple[complex, complex]:
    """Heat-bath marginal at v given the rest of the configuration.

    ``tau`` is a full configuration; the bit at ``v`` is ignored.
    """
    lam = as_weights(H, lam)
    rest = config_mask(tau) & ~(1 << v)
    if not is_independent(H, rest):
        raise ValueError("conditioning configuration violates an edge")
    lv = lam[v]
    if lv == -1:
        raise ZeroDivisionError(f"lambda_{v} = -1 makes the marginal undefined")
    if not is_independent(H, rest | (1 << v)):
        return 1 + 0j, 0j
    return complex(1 / (1 + lv)), complex(lv / (1 + lv))


def marginal_allone(H: Hypergraph, lam, S: Sequence[int], guard: bool = True) -> complex:
    """mu(sigma_v = 1 for every v in S)."""
    lam = as_weights(H, lam)
    smask = sum(1 << v for v in S)
    z, mag = 0j, 0.0
    hit = 0j
    _check_guard(H.n, guard)
    for x in config_chunks(H.n):
        x = x[independent_mask(H, x)]
        w = config_weights(x, lam)
        z += w.sum()
        mag += np.abs(w).sum()
        hit += w[(x & smask) == smask].sum()
    _assert_nonvanishing(z, mag)
    return complex(hit / z)


def edge_ratio(H: Hypergraph, lam, i: int, guard: bool = True) -> complex:
    """Z(H_{i+1}) / Z(H_i) where H_i keeps the first i edges."""
    if not 0 <= i < H.m:
        raise IndexError(f"edge index {i} outside 0..{H.m - 1}")
    lam = as_weights(H, lam)
    Hi = prefix(H, i)
    z0, mag0 = _ly_sums(Hi, lam, guard)
    _assert_nonvanishing(z0, mag0)
    z1, _ = _ly_sums(prefix(H, i + 1), lam, guard)
    return z1 / z0


def size_coefficients(H: Hypergraph, guard: bool = True) -> np.ndarray:
    """a_t = number of independent sets of size t, for t = 0..n."""
    _check_guard(H.n, guard)
    a = np.zeros(H.n + 1, dtype=np.int64)
    for x in config_chunks(H.n):
        x = x[independent_mask(H, x)]
        a += np.bincount(np.bitwise_count(x), minlength=H.n + 1)
    return a


def weighted_size_coefficients(H: Hypergraph, lam, guard: bool = True) -> np.ndarray:
    """Coefficients c_t of x -> Z(x * lambda) as a polynomial in x."""
    _check_guard(H.n, guard)
    lam = as_weights(H, lam)
    c = np.zeros(H.n + 1, dtype=complex)
    for x in config_chunks(H.n):
        x = x[independent_mask(H, x)]
        w = config_weights(x, lam)
        sizes = np.bitwise_count(x).astype(np.int64)
        c += np.bincount(sizes, weights=w.real, minlength=H.n + 1)
        c += 1j * np.bincount(sizes, weights=w.imag, minlength=H.n + 1)
    return c


def independent_sets(H: Hypergraph, guard: bool = True) -> np.ndarray:
    _check_guard(H.n, guard)
    return np.concatenate([x[independent_mask(H, x)] for x in config_chunks(H.n)])
