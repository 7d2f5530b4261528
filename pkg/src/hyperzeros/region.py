"""Zero-free parameter regions and the per-instance quantities N, M, alpha."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np

from .exact import as_weights
from .hypergraph import Hypergraph

BISECT_TOL = 1e-12


def eps_max_ly(k: int, delta: int) -> float:
    return 1.0 / (9 * k**5 * delta**2)


def eps_max_fs(k: int, delta: int) -> float:
    return 1.0 / (16 * (k + 1) ** 5 * delta**2)


def ly_rhs(k: int, delta: int) -> float:
    return 1.0 / (2 * math.sqrt(2) * math.e * delta * k * k)


def _bisect_lambda(target: float, eps: float) -> float:
    """Largest lambda with (lambda+eps)/(1+lambda-eps) <= target (increasing map)."""

    def f(x):
        return (x + eps) / (1 + x - eps)

    if f(0.0) >= target:
        return 0.0
    hi = 1.0
    while f(hi) < target:
        hi *= 2
    lo = 0.0
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lambda_c(k: int, delta: int, eps: float, scale: float = 1.0) -> float:
    """Right end of the certified real segment; ``scale`` multiplies the RHS."""
    if not 0 <= eps < 0.5:
        raise ValueError(f"eps={eps} outside [0, 1/2)")
    rhs = scale * ly_rhs(k, delta)
    if rhs <= 0:
        return 0.0
    target = rhs ** (2.0 / k)
    if not target < 1:
        raise ValueError(f"degenerate bound: RHS^(2/k)={target} >= 1")
    return _bisect_lambda(target, eps)


def counting_lambda_c(k: int, delta: int, eps: float, eta: float) -> float:
    if not 0 <= eta <= 1:
        raise ValueError(f"eta={eta} outside [0, 1]")
    return lambda_c(k, delta, eps, scale=math.sqrt(eta))


def segment_distance(z: complex, a: float, b: float) -> float:
    """Euclidean distance from z to the real segment [a, b]."""
    x = min(max(z.real, a), b)
    return abs(complex(z) - x)


@dataclass(frozen=True)
class RegionSpec:
    k: int
    delta: int
    eps: float
    kind: Literal["lee-yang", "fisher", "counting"] = "lee-yang"
    eta: float = 1.0
    lambda_c: float = field(init=False)

    def __post_init__(self):
        if self.kind == "fisher":
            lc = 1.0
        elif self.kind == "counting":
            lc = counting_lambda_c(self.k, self.delta, self.eps, self.eta)
        else:
            lc = lambda_c(self.k, self.delta, self.eps)
        object.__setattr__(self, "lambda_c", lc)

    @property
    def eps_valid(self) -> bool:
        if self.kind == "fisher":
            return 0 < self.eps < eps_max_fs(self.k, self.delta)
        return 0 < self.eps < eps_max_ly(self.k, self.delta)

    def contains(self, z: complex) -> bool:
        return segment_distance(complex(z), 0.0, self.lambda_c) <= self.eps


def in_region_ly(z: complex, spec: RegionSpec) -> bool:
    return segment_distance(complex(z), 0.0, spec.lambda_c) <= spec.eps


def in_region_fs(z: complex, eps: float) -> bool:
    return segment_distance(complex(z), 0.0, 1.0) <= eps


def fisher_condition(k: int, delta: int, eps: float) -> bool:
    small_eps = eps < eps_max_fs(k, delta)
    decay = math.sqrt(1 + 2 * eps) * 2 ** (-k / 2) < 1 / (2 * math.sqrt(2) * math.e * delta * (k + 1) ** 2)
    return small_eps and decay


@dataclass(frozen=True)
class ModelParams:
    N: float
    M: float
    alpha: float
    exponent: int


def _pow(base: float, exp: int) -> float:
    try:
        return base**exp
    except OverflowError:
        return math.inf


def model_params(H: Hypergraph, lam, k: int | None = None, delta: int | None = None) -> ModelParams:
    """N, M and alpha = N * M^(4 delta^2 k^5); k, delta default to those of H."""
    lam = as_weights(H, lam)
    if np.any(lam == -1):
        raise ZeroDivisionError("lambda_v = -1 is not allowed")
    occ = np.abs(lam / (1 + lam))
    free = np.abs(1 / (1 + lam))
    N = max((float(np.prod(occ[list(e)])) for e in H.edges), default=0.0)
    M = float(np.max(occ + free)) if H.n else 1.0
    k = H.k_max if k is None else k
    delta = H.delta if delta is None else delta
    exponent = 4 * delta**2 * k**5
    alpha = 0.0 if N == 0 else N * _pow(M, exponent)
    return ModelParams(N, M, alpha, exponent)


def alpha_margin(H: Hypergraph, lam, k: int | None = None, delta: int | None = None) -> float:
    """8 e delta^2 k^4 alpha; the condition holds when this is below 1."""
    p = model_params(H, lam, k, delta)
    k = H.k_max if k is None else k
    delta = H.delta if delta is None else delta
    return 8 * math.e * delta**2 * k**4 * p.alpha


def alpha_condition(H: Hypergraph, lam, k: int | None = None, delta: int | None = None) -> bool:
    return alpha_margin(H, lam, k, delta) < 1


@dataclass
class CertificateReport:
    k: int
    delta: int
    k_uniform: bool
    eps: float
    eps_valid: bool
    lambda_c: float
    in_region: list[bool]
    N: float
    M: float
    alpha: float
    alpha_margin: float
    alpha_ok: bool
    passed: bool
    failures: list[str]

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("alpha", "alpha_margin"):
            if math.isinf(d[key]):
                d[key] = "inf"
        return d


def certify(H: Hypergraph, lam, eps: float, eta: float | None = None) -> CertificateReport:
    """Premise checks for zero-freeness (and, with ``eta``, the counters).

    Degrees below 3 and edge sizes below 2 are raised to those values: a
    hypergraph with smaller parameters lies in the larger class, and the
    region formulas are only stated there.
    """
    lam = as_weights(H, lam)
    k = max(H.k_max, 2)
    delta = max(H.delta, 3)
    if eta is None:
        spec = RegionSpec(k, delta, eps)
    else:
        spec = RegionSpec(k, delta, eps, kind="counting", eta=eta)
    member = [spec.contains(z) for z in lam]
    p = model_params(H, lam, k, delta)
    margin = 8 * math.e * delta**2 * k**4 * p.alpha
    failures = []
    if not spec.eps_valid:
        failures.append(f"eps={eps} not below {eps_max_ly(k, delta):.6g}")
    if not all(member):
        bad = [i for i, ok in enumerate(member) if not ok]
        failures.append(f"vertices {bad[:8]} lie outside the region (lambda_c={spec.lambda_c:.6g})")
    if not margin < 1:
        failures.append(f"alpha condition fails: 8e delta^2 k^4 alpha = {margin:.6g} >= 1")
    return CertificateReport(
        k=k,
        delta=delta,
        k_uniform=H.is_uniform,
        eps=eps,
        eps_valid=spec.eps_valid,
        lambda_c=spec.lambda_c,
        in_region=member,
        N=p.N,
        M=p.M,
        alpha=p.alpha,
        alpha_margin=margin,
        alpha_ok=margin < 1,
        passed=not failures,
        failures=failures,
    )


def region_grid(spec: RegionSpec, size: int = 20) -> np.ndarray:
    """Points of a size x size grid over the bounding box that lie in the region."""
    xs = np.linspace(-spec.eps, spec.lambda_c + spec.eps, size)
    ys = np.linspace(-spec.eps, spec.eps, size)
    pts = (xs[:, None] + 1j * ys[None, :]).ravel()
    return np.array([z for z in pts if spec.contains(z)])
