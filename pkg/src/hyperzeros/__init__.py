"""Zero-freeness, complex Glauber dynamics and approximate counting for
hypergraph independence polynomials, checked against brute-force oracles."""

from .hypergraph import Hypergraph, random_instance

__all__ = ["Hypergraph", "random_instance"]
__version__ = "0.1.0"
