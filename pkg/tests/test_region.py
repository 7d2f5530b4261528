import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeros.exact import partition_ly, term_magnitude
from hyperzeros.hypergraph import Hypergraph, prefix, random_instance
from hyperzeros.region import (
    RegionSpec,
    alpha_condition,
    certify,
    counting_lambda_c,
    eps_max_fs,
    eps_max_ly,
    fisher_condition,
    in_region_fs,
    in_region_ly,
    lambda_c,
    model_params,
    region_grid,
)

R = 1 / (24 * math.sqrt(2) * math.e)


def closed_form(eps, r=R):
    return (r * (1 - eps) - eps) / (1 - r)


def test_eps_max():
    assert eps_max_ly(2, 3) == pytest.approx(1 / 2592)
    assert eps_max_ly(3, 3) == pytest.approx(1 / (9 * 243 * 9))
    assert eps_max_fs(2, 3) == pytest.approx(1 / (16 * 243 * 9))


def test_lambda_c_closed_form():
    assert lambda_c(2, 3, 1e-4) == pytest.approx(closed_form(1e-4), abs=1e-11)
    assert lambda_c(2, 3, 1e-4) == pytest.approx(0.010855326293949, abs=1e-11)


@given(st.floats(0, 3e-4))
def test_lambda_c_matches_oracle(eps):
    assert lambda_c(2, 3, eps) == pytest.approx(closed_form(eps), abs=1e-10)


def test_lambda_c_large_k():
    k = 40
    delta = math.floor(0.5 * 2 ** (k / 2) / (2 * math.sqrt(2) * math.e * k * k))
    assert delta == 42
    assert lambda_c(k, delta, 0.0) >= 1


def test_counting_lambda_c():
    assert counting_lambda_c(2, 3, 1e-4, 1.0) == pytest.approx(lambda_c(2, 3, 1e-4))
    assert counting_lambda_c(2, 3, 1e-4, 0.0) == 0
    assert counting_lambda_c(2, 3, 1e-4, 0.25) == pytest.approx(closed_form(1e-4, R / 2), abs=1e-11)
    assert counting_lambda_c(2, 3, 1e-4, 0.25) == pytest.approx(0.005347815877485, abs=1e-11)


def test_region_membership():
    spec = RegionSpec(2, 3, 1e-4)
    lc = spec.lambda_c
    assert in_region_ly(0, spec)
    assert not in_region_ly(lc + spec.eps + 0.01, spec)
    for x in np.linspace(0, lc, 7, endpoint=False):
        assert in_region_ly(x + 1j * spec.eps, spec)
    assert spec.eps_valid and not RegionSpec(2, 3, 1e-3).eps_valid


def test_fisher_region():
    eps = 1e-3
    assert in_region_fs(0.5, eps)
    assert not in_region_fs(1 + 2 * eps, eps)
    assert in_region_fs(0.3 + 1j * eps, eps)


def test_fisher_condition():
    assert fisher_condition(2, 3, 1e-6) is False
    first = next(k for k in range(2, 60) if fisher_condition(k, 3, 0.0))
    assert first == 29
    assert not fisher_condition(40, 3, eps_max_fs(40, 3))


def test_model_params():
    H = Hypergraph(4, ((0, 1), (2, 3)))
    p = model_params(H, 1.0)
    assert (p.N, p.M, p.alpha) == (0.25, 1.0, 0.25)
    p = model_params(H, 0.0)
    assert (p.N, p.M, p.alpha) == (0.0, 1.0, 0.0)
    p = model_params(H, 1j)
    assert p.M == pytest.approx(math.sqrt(2)) and p.N == pytest.approx(0.5)


def test_alpha_condition():
    H = random_instance(6, 4, 2, 3, 0)
    assert H.delta == 3
    assert alpha_condition(H, 0.0)
    assert not alpha_condition(H, 1.0)


def test_certify_examples():
    H = random_instance(6, 4, 2, 3, 0)
    assert certify(H, 0.0, 1e-4).passed
    rep = certify(H, 1.0, 1e-4)
    assert not rep.passed and any("alpha" in f for f in rep.failures)


@given(st.integers(0, 10**5), st.floats(0, 1), st.floats(-1, 1))
def test_certified_points_are_zero_free(seed, x, y):
    H = random_instance(7, 4, 2, 3, seed)
    spec = RegionSpec(2, 3, 2e-4)
    z = x * spec.lambda_c + 1j * y * spec.eps
    rng = np.random.default_rng(seed)
    lam = z * (1 - 0.5 * rng.random(H.n))
    if not certify(H, lam, spec.eps).passed:
        return
    for i in range(H.m + 1):
        Hi = prefix(H, i)
        assert abs(partition_ly(Hi, lam)) > 1e-8 * term_magnitude(Hi, lam)


def test_region_grid_inside():
    spec = RegionSpec(2, 3, 2e-4)
    pts = region_grid(spec, 20)
    assert len(pts) > 0 and all(spec.contains(z) for z in pts)
