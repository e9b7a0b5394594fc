"""
Lattice quadrature over the simplex for factorized integrands.

The grid is the set of nonnegative integer vectors of length K summing to
N, scaled by 1/N. For f(t) = prod_k f_k(t_k) the lattice sum

    S_NK = sum_{x in grid} prod_k f_k(x_k / N)

is entry N of the K-fold convolution of the vectors (f_k(n/N))_{n=0..N},
and the simplex integral is approximated by S_NK / N^(K-1). Everything is
carried in log domain.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from boojum_dist.errors import (DomainError, LatticeOverflowError,
                                LengthMismatchError)
from boojum_dist.special_fn import log_sum_exp

logger = logging.getLogger(__name__)

_MAX_COUNT = np.iinfo(np.int64).max
_ROW_BLOCK = 64


@dataclass(frozen=True)
class LatticeSpec:
    """
    Resolution ``N`` and dimension ``K`` of the simplex grid.
    """
    N: int
    K: int

    def __post_init__(self):
        for name in ('N', 'K'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(
                    value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise DomainError(f"{name} must be >= 1, got {value}")


def log_weight_vector(entries):
    """
    Validate a log-domain sample vector (f_k(n/N))_{n=0..N}: 1-d, non-empty,
    -inf allowed, no NaN or +inf.
    """
    arr = np.asarray(entries, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(
            f"expected a non-empty vector, got shape {arr.shape}")
    if np.any(np.isnan(arr)) or np.any(np.isposinf(arr)):
        raise DomainError("log weights hold NaN or +inf")
    return arr


def lattice_count(spec: LatticeSpec) -> int:
    """
    Number of grid points, C(N+K-1, K-1).
    """
    count = math.comb(spec.N + spec.K - 1, spec.K - 1)
    if count > _MAX_COUNT:
        raise LatticeOverflowError(
            f"C({spec.N + spec.K - 1}, {spec.K - 1}) exceeds int64")
    return count


def enumerate_lattice(spec: LatticeSpec):
    """
    Yield every grid point once, in lexicographic order. Meant for small
    grids; the number of points is ``lattice_count(spec)``.
    """
    def _points(total, dim):
        if dim == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for tail in _points(total - head, dim - 1):
                yield (head,) + tail

    yield from _points(spec.N, spec.K)


def log_conv_exp(a, b):
    """
    log of the convolution of exp(a) and exp(b), truncated to indices 0..N:

        c_n = log sum_{j=0..n} exp(a_j + b_{n-j})

    Evaluated in blocks of rows against a strided view of the
    lower-triangular Toeplitz matrix of ``b``; row n only reads columns
    0..n, so the matrix is never allocated.
    """
    a = log_weight_vector(a)
    b = log_weight_vector(b)
    if a.size != b.size:
        raise LengthMismatchError(f"operands of length {a.size} and {b.size}")

    n = b.size
    # toeplitz[i, j] = b[i - j] for j <= i, else -inf
    padded = np.concatenate([np.full(n - 1, -np.inf), b])[::-1]
    toeplitz = sliding_window_view(padded, n)[::-1]
    out = np.empty(n)
    for start in range(0, n, _ROW_BLOCK):
        stop = min(start + _ROW_BLOCK, n)
        rows = toeplitz[start:stop, :stop] + a[np.newaxis, :stop]
        out[start:stop] = log_sum_exp(rows, axis=1)
    return out


def _check_weights(weights):
    weights = [log_weight_vector(w) for w in weights]
    if len(weights) == 0:
        raise DomainError("at least one weight vector is required (K >= 1)")
    size = weights[0].size
    for k, w in enumerate(weights):
        if w.size != size:
            raise LengthMismatchError(
                f"weight vector {k} has length {w.size}, expected {size}")
    return weights


def factorized_simplex_sum(weights) -> float:
    """
    log S_NK for the K log-weight vectors in ``weights``. The convolution
    is folded left in index order; only entry N of the last product is
    formed.
    """
    weights = _check_weights(weights)
    acc = weights[0]
    for w in weights[1:-1]:
        acc = log_conv_exp(acc, w)
    if len(weights) == 1:
        return float(acc[-1])
    return log_sum_exp(acc + weights[-1][::-1])


def brute_force_simplex_sum(weights) -> float:
    """
    log S_NK by direct enumeration of the grid. Exponential in K; this is
    the reference ``factorized_simplex_sum`` is checked against.
    """
    weights = _check_weights(weights)
    spec = LatticeSpec(weights[0].size - 1, len(weights))
    columns = np.arange(spec.K)
    terms = [np.sum(np.stack(weights)[columns, list(point)])
             for point in enumerate_lattice(spec)]
    return log_sum_exp(terms)


def integrate_simplex(weights, spec: LatticeSpec) -> float:
    """
    log of the simplex integral of prod_k f_k(t_k), approximated by
    log S_NK - (K-1) log N. Cells of the grid have unit measure, so no
    further constant enters.
    """
    weights = _check_weights(weights)
    if len(weights) != spec.K or weights[0].size != spec.N + 1:
        raise LengthMismatchError(
            f"weights are {len(weights)}x{weights[0].size}, "
            f"lattice expects {spec.K}x{spec.N + 1}")
    return factorized_simplex_sum(weights) - (spec.K - 1) * math.log(spec.N)
