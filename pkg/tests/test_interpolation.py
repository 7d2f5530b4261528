import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeros.exact import GuardError, partition_ly, size_coefficients, weighted_size_coefficients
from hyperzeros.hypergraph import Hypergraph, random_instance
from hyperzeros.interpolation import (
    PremiseError,
    approx_log_partition,
    coeff_prefix_his,
    coefficients_from_power_sums,
    min_root_modulus,
    power_sums,
    taylor_truncation,
    truncation_bound,
    zero_free_delta,
)


def test_power_sum_examples():
    assert np.allclose(power_sums([1, -1, 0, 0, 0]), 1)
    assert np.allclose(power_sums([1, -5, 6], 2), [5, 13])
    assert np.allclose(power_sums([1], 4), 0)
    with pytest.raises(ValueError):
        power_sums([2, 1])


@given(st.lists(st.complex_numbers(max_magnitude=3), min_size=1, max_size=8))
def test_newton_roundtrip(inv_roots):
    c = np.poly(inv_roots)  # ascending coefficients of prod (1 - w x)
    back = coefficients_from_power_sums(power_sums(c))
    scale = max(1, np.abs(c).max())
    assert np.abs(back - c).max() <= 1e-10 * scale


@given(st.lists(st.complex_numbers(max_magnitude=2), min_size=1, max_size=6), st.integers(1, 6))
def test_power_sums_match_roots(inv_roots, r):
    c = np.poly(inv_roots)
    expect = [sum(w**s for w in inv_roots) for s in range(1, r + 1)]
    assert np.allclose(power_sums(c, r), expect, atol=1e-9 * 2**r * 4**r)


def test_taylor_examples():
    assert taylor_truncation([1], 5, 1.0) == 0
    assert taylor_truncation([1, -0.3], 10, 1.0) == pytest.approx(-sum(0.3**s / s for s in range(1, 11)))
    assert taylor_truncation([1, -0.3], 10, 1.0) == pytest.approx(-0.3566747, abs=1e-7)


def test_taylor_converges():
    c = np.poly([0.2 + 0.1j, -0.4])
    target = np.log(np.polyval(c[::-1], 1.0))
    errs = [abs(taylor_truncation(c, r, 1.0) - target) for r in (2, 6, 12)]
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-4


def test_truncation_bound_examples():
    assert truncation_bound(5, 2.0, 0.0, 10) == 0
    b = truncation_bound(5, 2.0, 1.0, 10)
    assert b == pytest.approx(5 * (1 / 3) ** 11 / (11 * (2 / 3)))
    assert b == pytest.approx(3.85e-6, rel=1e-2)
    c = np.poly([1 / 3] * 5)
    assert abs(taylor_truncation(c, 10, 1.0) - 5 * math.log(2 / 3)) <= b
    assert all(truncation_bound(5, 2.0, 1.0, r) > truncation_bound(5, 2.0, 1.0, r + 1) for r in range(1, 12))


def test_prefix_examples(edge3):
    assert np.allclose(coeff_prefix_his(Hypergraph(4), 1, 2), [1, 4, 6])
    assert np.allclose(coeff_prefix_his(edge3, 1, 3), size_coefficients(edge3))
    H = random_instance(6, 3, 2, 2, 1)
    lam = np.linspace(0.1, 0.6, 6) * 1j
    full = coeff_prefix_his(H, lam, 6)
    assert np.allclose(full, weighted_size_coefficients(H, lam))
    assert np.sum(full) == pytest.approx(partition_ly(H, lam))


def test_prefix_guard():
    with pytest.raises(GuardError):
        coeff_prefix_his(Hypergraph(10), 1, 9)


def test_root_scan():
    assert min_root_modulus([1]) == math.inf
    assert min_root_modulus([1, -0.5]) == pytest.approx(2)
    assert zero_free_delta([1, -0.5]) == pytest.approx(1, rel=1e-5)


def test_log_partition_edgeless():
    lam = np.array([0.2, 0.1 + 0.3j, -0.1, 0.05j])
    res = approx_log_partition(Hypergraph(4), lam, 4)
    assert abs(res.T_r - np.sum(np.log(1 + lam))) <= max(res.bound, 1e-12)


def test_log_partition_bound_and_premise():
    rng = np.random.default_rng(0)
    checked = 0
    for seed in range(20):
        H = random_instance(8, 4, 3, 3, seed)
        lam = rng.uniform(0, 0.3, 8) * np.exp(1j * rng.uniform(-1, 1))
        try:
            res = approx_log_partition(H, lam, 6)
        except PremiseError:
            continue
        checked += 1
        z = partition_ly(H, lam)
        assert abs(np.exp(res.T_r) - z) <= abs(z) * (math.exp(res.bound) - 1) + 1e-12
        # imaginary parts of log agree modulo 2 pi
        diff = res.T_r - np.log(z)
        assert abs(diff.real) <= res.bound + 1e-12
    assert checked > 10


def test_premise_violation():
    with pytest.raises(PremiseError):
        approx_log_partition(Hypergraph(1), [-2.0], 1)


def test_error_vanishes_with_order():
    H = random_instance(7, 3, 3, 2, 4)
    lam = np.full(7, 0.15)
    z = np.log(partition_ly(H, lam))
    runs = [approx_log_partition(H, lam, r) for r in (1, 4, 8)]
    errs = [abs(res.T_r - z) for res in runs]
    assert errs[0] > errs[1] > errs[2]
    assert all(e <= res.bound for e, res in zip(errs, runs))
