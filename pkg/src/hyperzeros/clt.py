"""Size statistics of Gibbs-random independent sets and size-t counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.integrate import simpson
from scipy.special import ndtr

from .exact import size_coefficients, weighted_size_coefficients
from .hypergraph import Hypergraph, distances_from
from .interpolation import (
    PremiseError,
    coeff_prefix_his,
    power_sums,
    truncation_bound,
    zero_free_delta,
)
from .region import eps_max_ly, lambda_c

PANELS = 4096
GRID_POINTS = 64


class SearchError(RuntimeError):
    """No grid point reached the requested size within the cap."""


def gauss_density(x):
    return np.exp(-np.square(x) / 2) / math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class SizeDistribution:
    lam: float
    probs: np.ndarray
    mean: float
    var: float

    @property
    def n(self) -> int:
        return len(self.probs) - 1

    @property
    def sigma(self) -> float:
        return math.sqrt(self.var)


def distribution_from_coefficients(a, lam: float) -> SizeDistribution:
    if not lam > 0:
        raise ValueError("lambda must be positive")
    a = np.asarray(a, dtype=float)
    t = np.arange(len(a))
    # scale by the largest term to stay finite for large n * log(lambda)
    logw = np.where(a > 0, np.log(np.where(a > 0, a, 1)) + t * math.log(lam), -np.inf)
    w = np.exp(logw - logw.max())
    probs = w / w.sum()
    mean = float(np.dot(t, probs))
    var = float(np.dot((t - mean) ** 2, probs))
    return SizeDistribution(lam, probs, mean, var)


def size_distribution(H: Hypergraph, lam: float, guard: bool = True) -> SizeDistribution:
    return distribution_from_coefficients(size_coefficients(H, guard=guard), lam)


def binomial_distribution(n: int, p: float = 0.5) -> SizeDistribution:
    """Binomial(n, p) written as a size distribution (edgeless, lambda = p/(1-p))."""
    a = [comb(n, t) for t in range(n + 1)]
    return distribution_from_coefficients(a, p / (1 - p))


def cumulants(dist: SizeDistribution, s_max: int = 4) -> np.ndarray:
    """kappa_1..kappa_s_max from central moments."""
    if not 1 <= s_max <= 6:
        raise ValueError("s_max must be in 1..6")
    t = np.arange(len(dist.probs))
    m = [float(np.dot((t - dist.mean) ** s, dist.probs)) for s in range(s_max + 1)]
    m[1] = 0.0
    kap = [0.0] * (s_max + 1)
    for s in range(2, s_max + 1):
        kap[s] = m[s] - sum(comb(s - 1, j - 1) * kap[j] * m[s - j] for j in range(2, s))
    kap[1] = dist.mean
    return np.array(kap[1:])


def occupancy(H: Hypergraph, lam: float) -> float:
    return size_distribution(H, lam).mean / H.n


def occupancy_lower_bound(lam: float, k: int, delta: int) -> float:
    return 1 - (1 / (1 + lam)) * (1 + 1 / (4 * math.e * delta * k**3))


def _require_spread(dist: SizeDistribution) -> None:
    if not dist.var > 0:
        raise ValueError("distribution has zero variance")


def kolmogorov_gap(dist: SizeDistribution) -> float:
    """sup_y |F_Y(y) - Phi(y)|, attained at a jump (from either side)."""
    _require_spread(dist)
    t = np.arange(len(dist.probs))
    y = (t - dist.mean) / dist.sigma
    cdf = np.cumsum(dist.probs)
    below = cdf - dist.probs
    phi = ndtr(y)
    return float(max(np.max(np.abs(cdf - phi)), np.max(np.abs(below - phi))))


def lclt_gap(dist: SizeDistribution) -> float:
    _require_spread(dist)
    lo = min(0, math.floor(dist.mean - 10 * dist.sigma))
    hi = max(dist.n, math.ceil(dist.mean + 10 * dist.sigma))
    t = np.arange(lo, hi + 1)
    p = np.zeros(t.shape)
    inside = (t >= 0) & (t <= dist.n)
    p[inside] = dist.probs[t[inside]]
    g = gauss_density((t - dist.mean) / dist.sigma) / dist.sigma
    return float(np.max(np.abs(p - g)))


def char_fn(dist: SizeDistribution, t):
    """E exp(i t Y) for the standardised size Y."""
    _require_spread(dist)
    s = np.arange(len(dist.probs))
    t = np.asarray(t, dtype=float)
    phase = np.exp(1j * np.multiply.outer(t, (s - dist.mean) / dist.sigma))
    return phase @ dist.probs


def invert_point(phi_y, t_int: int, mean: float, sigma: float, panels: int = PANELS) -> complex:
    """(1 / 2 pi sigma) * integral over [-pi sigma, pi sigma] of phi_y(u) e^{-i u y}."""
    u = np.linspace(-math.pi * sigma, math.pi * sigma, panels + 1)
    y = (t_int - mean) / sigma
    vals = phi_y(u) * np.exp(-1j * u * y)
    return complex(simpson(vals, x=u) / (2 * math.pi * sigma))


def fourier_inversion_P(dist: SizeDistribution, t_int: int, panels: int = PANELS) -> complex:
    if not dist.sigma > 1:
        raise ValueError(f"inversion needs sigma > 1, got {dist.sigma:.4g}")
    return invert_point(lambda u: char_fn(dist, u), t_int, dist.mean, dist.sigma, panels)


def characteristic_decay_constant(dist: SizeDistribution, n: int, points: int = 401) -> float:
    """Largest c with |phi(t)| <= exp(-c lambda n t^2 / sigma^2) on the grid over [-pi sigma, pi sigma]."""
    _require_spread(dist)
    t = np.linspace(-math.pi * dist.sigma, math.pi * dist.sigma, points)
    t = t[t != 0]
    # 1 - |phi|^2 = 4 sum_{s<s'} p_s p_s' sin^2((s'-s) theta / 2), free of cancellation
    p = dist.probs
    d = np.arange(1, len(p))
    lag = np.array([np.dot(p[:-j], p[j:]) for j in d])
    theta = t / dist.sigma
    gap = 4 * (np.sin(np.multiply.outer(theta, d) / 2) ** 2) @ lag
    with np.errstate(divide="ignore"):  # |phi| = 0 puts no constraint on c
        neg_log_mod = -0.5 * np.log1p(-np.minimum(gap, 1.0))
    return float(np.min(neg_log_mod * dist.var / (dist.lam * n * t**2)))


def scattered_set(H: Hypergraph) -> list[int]:
    """Greedy set with pairwise hypergraph distance at least 4."""
    taken: list[int] = []
    blocked: set[int] = set()
    for v in range(H.n):
        if v in blocked:
            continue
        taken.append(v)
        blocked.update(u for u, d in distances_from(H, v).items() if d <= 3)
    return taken


def default_lambda_cap(H: Hypergraph, eps: float | None = None) -> float:
    k, delta = max(H.k_max, 2), max(H.delta, 3)
    eps = eps_max_ly(k, delta) / 2 if eps is None else eps
    return min(1.0, lambda_c(k, delta, eps))


@dataclass(frozen=True)
class LambdaStar:
    lambda_star: float
    s: int
    achieved: float
    zeta: float


def find_lambda_star(H: Hypergraph, t: int, lam_cap: float | None = None) -> LambdaStar:
    cap = default_lambda_cap(H) if lam_cap is None else lam_cap
    a = size_coefficients(H)
    n = H.n

    def stats(lam):
        return distribution_from_coefficients(a, lam)

    top = stats(cap).mean
    if not 1 <= t <= top:
        raise ValueError(f"t={t} outside [1, n*alpha(cap)={top:.6g}]")
    grid = np.geomspace(cap * 1e-4, cap, GRID_POINTS)
    zeta = max(stats(x).var / (x * n) for x in grid)
    smax = math.ceil(2 * zeta * n * cap)
    for s in range(1, smax + 1):
        lam = s / (2 * zeta * n)
        got = stats(lam).mean
        if abs(got - t) <= 0.5:
            return LambdaStar(float(lam), s, float(got), float(zeta))
    raise SearchError(f"no grid point with |n alpha - {t}| <= 1/2 below lambda={cap}")


@dataclass(frozen=True)
class SizeCount:
    i_t_hat: float
    exact: int
    lambda_star: float
    mode: str
    rel_err: float

    def to_dict(self) -> dict:
        return {"i_t_hat": self.i_t_hat, "exact": self.exact, "lambda_star": self.lambda_star,
                "mode": self.mode, "rel_err": self.rel_err}


def _pipeline_probability(H: Hypergraph, lam: float, t: int, order: int) -> tuple[float, float]:
    """(P[X=t], Z(lam)) from the truncated log-series of x -> Z(x lam)."""
    full = weighted_size_coefficients(H, lam)
    delta = zero_free_delta(full)
    if not delta > 0:
        raise PremiseError("g(x) = Z(x lambda*) has a root inside the closed unit disk")
    c = coeff_prefix_his(H, lam, order)
    p = power_sums(c, order)
    s = np.arange(1, order + 1)

    def log_g(x):
        return -(np.power.outer(x, s) / s) @ p

    log_z = log_g(np.array([1.0 + 0j]))[0]
    mean = float(np.real(-np.sum(p)))
    var = float(np.real(-np.sum(s * p)))
    sigma = math.sqrt(max(var, 1e-300))

    def phi_y(u):
        theta = u / sigma
        return np.exp(log_g(np.exp(1j * theta)) - log_z - 1j * theta * mean)

    prob = invert_point(phi_y, t, mean, sigma).real
    return prob, float(np.exp(log_z).real)


def count_size_t(H: Hypergraph, t: int, eta: float = 0.1, mode: str = "exact",
                 lam_cap: float | None = None, order: int = 8) -> SizeCount:
    """i_t = P[X=t] Z(lambda*) / lambda*^t at the lambda* found by the grid search."""
    a = size_coefficients(H)
    exact = int(a[t]) if 0 <= t <= H.n else 0
    if t > H.n or (t <= H.n and a[t] == 0 and mode == "exact"):
        return SizeCount(0.0, exact, float("nan"), mode, 0.0)
    star = find_lambda_star(H, t, lam_cap)
    lam = star.lambda_star
    if mode == "exact":
        dist = distribution_from_coefficients(a, lam)
        z = float(np.polyval(a[::-1].astype(float), lam))
        est = float(dist.probs[t] * z / lam**t)
    elif mode == "pipeline":
        prob, z = _pipeline_probability(H, lam, t, order)
        est = prob * z / lam**t
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rel = abs(est - exact) / exact if exact else abs(est)
    return SizeCount(est, exact, lam, mode, rel)


def pipeline_error_bound(H: Hypergraph, lam: float, order: int) -> float:
    """Truncation bound on |x| = 1 for the series used by the pipeline."""
    full = np.trim_zeros(weighted_size_coefficients(H, lam), "b")
    return truncation_bound(len(full) - 1, zero_free_delta(full), 1.0, order)
