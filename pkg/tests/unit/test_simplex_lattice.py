import math

import numpy as np
import pytest
from scipy import linalg, special

from boojum_dist.errors import (DomainError, LatticeOverflowError,
                                LengthMismatchError)
from boojum_dist.simplex_lattice import (LatticeSpec,
                                         brute_force_simplex_sum,
                                         enumerate_lattice,
                                         factorized_simplex_sum,
                                         integrate_simplex, lattice_count,
                                         log_conv_exp)


def _log_kernel(values):
    with np.errstate(divide='ignore'):
        return np.log(values)


@pytest.mark.parametrize('N, K, expected', [(5, 1, 1), (3, 2, 4), (2, 3, 6)])
def test_lattice_count(N, K, expected):
    assert lattice_count(LatticeSpec(N, K)) == expected


def test_lattice_count_recurrence():
    for K in range(1, 5):
        for N in range(0, 31):
            upper = math.comb(N + K, K)
            total = sum(lattice_count(LatticeSpec(n, K)) if n else 1
                        for n in range(N + 1))
            assert total == upper
            if N:
                assert lattice_count(LatticeSpec(N, K + 1)) == upper


def test_lattice_count_overflow():
    with pytest.raises(LatticeOverflowError):
        lattice_count(LatticeSpec(10 ** 6, 100))


@pytest.mark.parametrize('N, K', [(0, 2), (2, 0), (1.5, 2), (True, 2)])
def test_lattice_spec_validation(N, K):
    with pytest.raises(DomainError):
        LatticeSpec(N, K)


def test_enumerate_lattice_examples():
    assert list(enumerate_lattice(LatticeSpec(2, 2))) == \
        [(0, 2), (1, 1), (2, 0)]
    assert list(enumerate_lattice(LatticeSpec(1, 3))) == \
        [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert list(enumerate_lattice(LatticeSpec(4, 1))) == [(4,)]


@pytest.mark.parametrize('N, K', [(7, 2), (5, 3), (6, 4)])
def test_enumerate_lattice_is_exhaustive(N, K):
    spec = LatticeSpec(N, K)
    points = list(enumerate_lattice(spec))
    assert len(points) == lattice_count(spec)
    assert len(set(points)) == len(points)
    assert points == sorted(points)
    assert all(sum(p) == N and min(p) >= 0 for p in points)


def test_log_conv_exp_examples():
    out = log_conv_exp([0.0, 0.0], [0.0, 0.0])
    np.testing.assert_allclose(out, [0.0, math.log(2.0)], atol=1e-15)

    b = np.array([0.3, -1.2])
    np.testing.assert_allclose(log_conv_exp([0.0, -np.inf], b), b,
                               atol=1e-15)


def test_log_conv_exp_matches_linear_convolution(rng):
    for _ in range(100):
        n = rng.integers(1, 9)
        a, b = rng.normal(0, 2, n), rng.normal(0, 2, n)
        direct = np.log(np.convolve(np.exp(a), np.exp(b))[:n])
        np.testing.assert_allclose(log_conv_exp(a, b), direct, atol=1e-12)


@pytest.mark.parametrize('n', [63, 64, 65, 129, 501])
def test_log_conv_exp_matches_dense_toeplitz(rng, n):
    a, b = rng.normal(0, 3, n), rng.normal(0, 3, n)
    a[rng.integers(0, n, n // 4)] = -np.inf
    upper = np.full(n, -np.inf)
    upper[0] = b[0]
    dense = linalg.toeplitz(b, upper) + a[np.newaxis, :]
    expected = special.logsumexp(dense, axis=1)
    np.testing.assert_allclose(log_conv_exp(a, b), expected,
                               rtol=1e-12, atol=1e-12)



def test_log_conv_exp_commutative_associative(rng):
    for _ in range(50):
        n = rng.integers(1, 17)
        a, b, c = (rng.normal(0, 3, n) for _ in range(3))
        np.testing.assert_allclose(log_conv_exp(a, b), log_conv_exp(b, a),
                                   atol=1e-10)
        np.testing.assert_allclose(log_conv_exp(log_conv_exp(a, b), c),
                                   log_conv_exp(a, log_conv_exp(b, c)),
                                   atol=1e-10)


def test_log_conv_exp_zero_operand():
    out = log_conv_exp(np.full(4, -np.inf), [0.0, 1.0, 2.0, 3.0])
    assert np.all(out == -np.inf)


def test_log_conv_exp_rejects():
    with pytest.raises(LengthMismatchError):
        log_conv_exp([0.0, 0.0], [0.0])
    with pytest.raises(DomainError):
        log_conv_exp([0.0, np.inf], [0.0, 0.0])


def test_factorized_sum_examples():
    u = np.arange(4) / 3.0
    assert factorized_simplex_sum([_log_kernel(u)] * 2) == \
        pytest.approx(math.log(4.0 / 9.0), abs=1e-12)
    assert factorized_simplex_sum([np.zeros(3)] * 3) == \
        pytest.approx(math.log(6.0), abs=1e-12)


def test_factorized_sum_single_factor():
    assert factorized_simplex_sum([[0.1, 0.2, 0.7]]) == 0.7


def test_factorized_sum_all_zero_weights():
    assert factorized_simplex_sum([np.full(3, -np.inf)] * 2) == -np.inf


def test_factorized_sum_matches_enumeration(rng):
    for _ in range(100):
        N, K = rng.integers(1, 21), rng.integers(1, 5)
        weights = rng.normal(0, 2, (K, N + 1))
        weights[rng.random((K, N + 1)) < 0.1] = -np.inf
        expected = brute_force_simplex_sum(weights)
        actual = factorized_simplex_sum(weights)
        if expected == -np.inf:
            assert actual == -np.inf
        else:
            assert actual == pytest.approx(expected, abs=1e-10)


def test_factorized_sum_rejects():
    with pytest.raises(DomainError):
        factorized_simplex_sum([])
    with pytest.raises(LengthMismatchError):
        factorized_simplex_sum([np.zeros(3), np.zeros(4)])


@pytest.mark.parametrize('K', [2, 3, 4])
def test_integrate_constant_function(K):
    """Unit cells: the integral of 1 tends to 1/(K-1)! with O(1/N) error"""
    target = -math.log(math.factorial(K - 1))
    errors = []
    for N in (200, 400):
        value = integrate_simplex(np.zeros((K, N + 1)), LatticeSpec(N, K))
        exact = math.log(lattice_count(LatticeSpec(N, K))) \
            - (K - 1) * math.log(N)
        assert value == pytest.approx(exact, abs=1e-12)
        errors.append(value - target)
        assert 0 < value - target <= K * (K - 1) / (2.0 * N)
    assert 1.8 < errors[0] / errors[1] < 2.2


def test_integrate_constant_two_dimensions():
    for N in (1, 10, 1000):
        value = integrate_simplex(np.zeros((2, N + 1)), LatticeSpec(N, 2))
        assert value == pytest.approx(math.log((N + 1) / N))


def test_integrate_beta_kernel():
    N = 1000
    u = np.arange(N + 1) / N
    value = integrate_simplex([_log_kernel(u)] * 2, LatticeSpec(N, 2))
    assert math.exp(value) == pytest.approx(1.0 / 6.0, rel=0.01)


def test_integrate_spec_mismatch():
    with pytest.raises(LengthMismatchError):
        integrate_simplex(np.zeros((2, 5)), LatticeSpec(3, 2))
    with pytest.raises(LengthMismatchError):
        integrate_simplex(np.zeros((3, 4)), LatticeSpec(3, 2))
