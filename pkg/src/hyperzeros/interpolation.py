"""Truncated Taylor expansion of log f from a coefficient prefix.

For f(x) = prod_j (1 - x / z_j) with f(0) = 1, the power sums of the inverse
roots follow from the first r coefficients through Newton's identities, and
log f(x) = -sum_s p_s x^s / s.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exact import GuardError, as_weights, weighted_size_coefficients
from .hypergraph import Hypergraph

ORDER_GUARD = 8


class PremiseError(ValueError):
    """The zero-free disk assumption does not hold for this polynomial."""


def power_sums(c, r: int | None = None) -> np.ndarray:
    """p_1..p_r of the inverse roots; ``c`` starts with c_0 = 1."""
    c = np.asarray(c, dtype=complex)
    if c.size == 0 or abs(c[0] - 1) > 1e-12:
        raise ValueError("prefix must start with c_0 = 1")
    r = len(c) - 1 if r is None else r
    cc = np.zeros(r + 1, dtype=complex)
    cc[: min(len(c), r + 1)] = c[: r + 1]
    p = np.zeros(r + 1, dtype=complex)
    for s in range(1, r + 1):
        p[s] = -s * cc[s] - sum(cc[j] * p[s - j] for j in range(1, s))
    return p[1:]


def coefficients_from_power_sums(p) -> np.ndarray:
    """Inverse of power_sums: returns c_0..c_r with c_0 = 1."""
    p = np.concatenate([[0], np.asarray(p, dtype=complex)])
    r = len(p) - 1
    c = np.zeros(r + 1, dtype=complex)
    c[0] = 1
    for s in range(1, r + 1):
        c[s] = -(p[s] + sum(c[j] * p[s - j] for j in range(1, s))) / s
    return c


def taylor_truncation(c, r: int, x: complex) -> complex:
    p = power_sums(c, r)
    s = np.arange(1, r + 1)
    return complex(-np.sum(p * x**s / s))


def truncation_bound(N: float, delta: float, abs_x: float, r: int) -> float:
    ratio = abs_x / (1 + delta)
    if ratio >= 1:
        raise ValueError("|x| must be below 1 + delta")
    return N * ratio ** (r + 1) / ((r + 1) * (1 - ratio))


def coeff_prefix_his(H: Hypergraph, lam_dir, r: int, guard: bool = True) -> np.ndarray:
    """c_0..c_r of x -> Z(x * lam_dir), by enumerating subsets of size <= r."""
    if guard and r > ORDER_GUARD:
        raise GuardError(f"order {r} exceeds the guard {ORDER_GUARD}")
    lam = as_weights(H, lam_dir)
    c = np.zeros(r + 1, dtype=complex)
    c[0] = 1
    masks = H.edge_masks
    for size in range(1, min(r, H.n) + 1):
        total = 0j
        for subset in itertools.combinations(range(H.n), size):
            s = sum(1 << v for v in subset)
            if all((s & em) != em for em in masks):
                total += math.prod(lam[v] for v in subset)
        c[size] = total
    return c


def min_root_modulus(coeffs) -> float:
    """Smallest |root| of sum_t c_t x^t (inf for constants)."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if len(c) <= 1:
        return math.inf
    return float(np.min(np.abs(np.roots(c[::-1]))))


def zero_free_delta(coeffs, shrink: float = 1e-6) -> float:
    """Largest delta (up to a relative margin) with no root in |x| <= 1+delta."""
    rho = min_root_modulus(coeffs)
    if math.isinf(rho):
        return math.inf
    return rho * (1 - shrink) - 1


@dataclass(frozen=True)
class TruncationResult:
    T_r: complex
    bound: float
    N: int
    delta: float
    order: int

    @property
    def Z_est(self) -> complex:
        return complex(np.exp(self.T_r))

    def to_dict(self) -> dict:
        z = self.Z_est
        return {"T_r_re": self.T_r.real, "T_r_im": self.T_r.imag, "bound": self.bound,
                "Z_est": [z.real, z.imag], "order": self.order, "delta": self.delta}


def approx_log_partition(H: Hypergraph, lam_dir, r: int, delta: float | None = None,
                         guard: bool = True) -> TruncationResult:
    """T_r(1) for g(x) = Z(x * lam_dir), checking the disk premise exactly.

    With ``delta=None`` the largest admissible delta from the root scan is used.
    """
    full = weighted_size_coefficients(H, lam_dir, guard=guard)
    full = np.trim_zeros(full, "b")
    N = len(full) - 1
    rho = min_root_modulus(full)
    if delta is None:
        delta = zero_free_delta(full)
    if not rho > 1 + delta or delta <= 0:
        raise PremiseError(f"g has a root of modulus {rho:.6g} inside |x| <= 1+delta (delta={delta:.6g})")
    c = coeff_prefix_his(H, lam_dir, r, guard=guard)
    t_r = taylor_truncation(c, r, 1.0)
    bound = 0.0 if math.isinf(delta) else truncation_bound(N, delta, 1.0, r)
    return TruncationResult(t_r, bound, N, delta, r)
