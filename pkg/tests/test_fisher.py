import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperzeros.exact import partition_fs, partition_ly
from hyperzeros.fisher import reduce, structure_check, verify_identity
from hyperzeros.hypergraph import Hypergraph

from conftest import complex_weights, hypergraphs


def test_reduce_all_zero():
    H = Hypergraph(3, ((0, 1), (1, 2)))
    red = reduce(H, [0, 0])
    assert red.H_prime == H and red.scale == 1 and len(red.lambda_prime) == 3


def test_reduce_single_edge(edge2):
    red = reduce(edge2, [0.5])
    assert red.H_prime == Hypergraph(3, ((0, 1, 2),))
    assert np.allclose(red.lambda_prime, 1) and red.scale == 0.5
    assert reduce(edge2, [1]).lambda_prime[2] == 0


def test_identity_examples(edge2):
    chk = verify_identity(edge2, [0.5])
    assert chk.ok and chk.lhs == pytest.approx(3.5) and chk.rhs == pytest.approx(3.5)
    H = Hypergraph(4, ((0, 1), (1, 2, 3)))
    chk = verify_identity(H, [0, 0])
    assert chk.ok and chk.rhs == partition_ly(H, 1)


@given(hypergraphs(n_max=8), st.data())
def test_identity_random(H, data):
    beta = data.draw(complex_weights(H.m, radius=1.2))
    beta[np.abs(beta) < 1e-3] = 0  # keep the auxiliary weights moderate
    assert verify_identity(H, beta).ok


@given(hypergraphs(n_max=8), st.data())
def test_zero_agreement(H, data):
    beta = data.draw(complex_weights(H.m))
    beta[np.abs(beta) < 1e-3] = 0
    red = reduce(H, beta)
    lhs = partition_ly(red.H_prime, red.lambda_prime)
    assert (abs(lhs) < 1e-300) == (abs(partition_fs(H, beta)) < 1e-300)


@given(hypergraphs(n_max=8), st.data())
def test_structure(H, data):
    beta = data.draw(complex_weights(H.m)) + 2  # nonzero
    assert structure_check(H, beta)
    assert structure_check(H, np.zeros(H.m))
    assert reduce(H, beta).H_prime.k_max == H.k_max + (1 if H.m else 0)
