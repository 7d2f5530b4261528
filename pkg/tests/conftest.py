import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperzeros import Hypergraph, random_instance

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, n_max=8, k_max=3, m_max=5, k_min=1):
    n = draw(st.integers(k_min, n_max))
    edges = set()
    for _ in range(draw(st.integers(0, m_max))):
        size = draw(st.integers(k_min, min(k_max, n)))
        e = tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=size, max_size=size))))
        edges.add(e)
    return Hypergraph(n, tuple(sorted(edges)))


@st.composite
def complex_weights(draw, n, radius=1.5):
    re = draw(st.lists(st.floats(-radius, radius), min_size=n, max_size=n))
    im = draw(st.lists(st.floats(-radius, radius), min_size=n, max_size=n))
    return np.array(re) + 1j * np.array(im)


@pytest.fixture
def edge2():
    return Hypergraph(2, ((0, 1),))


@pytest.fixture
def edge3():
    return Hypergraph(3, ((0, 1, 2),))


@pytest.fixture
def corpus():
    """Small mixed-uniformity instances used by several modules."""
    out = []
    for seed in range(12):
        n = 4 + seed % 6
        k = 2 + seed % 2
        out.append(random_instance(n, max(1, n // k), k, 3, seed))
    return out


def counting_instance(rng, n, eta=0.5, k=2, delta=3):
    """Random k-uniform instance with weights inside the counting region."""
    from hyperzeros import region

    region_eps = 0.9 * region.eps_max_ly(k, delta)
    lc = region.counting_lambda_c(k, delta, region_eps, eta)
    m = int(rng.integers(max(1, n // k), n + 1))
    H = random_instance(n, m, k, delta, int(rng.integers(2**31)))
    lam = rng.uniform(0, lc, n) + 1j * rng.uniform(-region_eps / 2, region_eps / 2, n)
    return H, lam, region_eps
