"""Edge-weighted (Fisher) partition functions as vertex-weighted ones.

Every edge with beta_e != 0 gets a private auxiliary vertex v_e, appended
after the original vertices in edge order, with weight (1 - beta_e)/beta_e.
Edges with beta_e = 0 stay hard constraints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import as_weights, partition_fs, partition_ly
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class ReducedInstance:
    H_prime: Hypergraph
    lambda_prime: np.ndarray
    scale: complex

    def to_dict(self) -> dict:
        return {
            "hypergraph": self.H_prime.to_dict(),
            "lambda": [[z.real, z.imag] for z in self.lambda_prime],
            "scale": [self.scale.real, self.scale.imag],
        }


def reduce(H: Hypergraph, beta) -> ReducedInstance:
    beta = as_weights(H.m, beta, "beta")
    edges, lam = [], [1 + 0j] * H.n
    scale = 1 + 0j
    nxt = H.n
    for e, b in zip(H.edges, beta):
        if b == 0:
            edges.append(e)
            continue
        edges.append(e + (nxt,))
        lam.append((1 - b) / b)
        scale *= b
        nxt += 1
    return ReducedInstance(Hypergraph(nxt, tuple(edges)), np.array(lam, dtype=complex), complex(scale))


@dataclass(frozen=True)
class IdentityCheck:
    lhs: complex
    rhs: complex
    ok: bool


def verify_identity(H: Hypergraph, beta, rtol: float = 1e-9) -> IdentityCheck:
    red = reduce(H, beta)
    lhs = partition_ly(red.H_prime, red.lambda_prime) * red.scale
    rhs = partition_fs(H, beta)
    gap = abs(lhs - rhs)
    return IdentityCheck(lhs, rhs, gap <= rtol * max(abs(rhs), abs(lhs), 1e-300) or gap == 0)


def structure_check(H: Hypergraph, beta) -> bool:
    Hp = reduce(H, beta).H_prime
    return Hp.delta == H.delta and Hp.k_max <= H.k_max + 1
