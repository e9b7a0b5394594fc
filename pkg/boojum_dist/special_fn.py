"""
Numerically stable special functions: log Gamma, digamma, the multivariate
Beta function and log-sum-exp.

Everything downstream works in log domain, so nothing here returns a raw
Gamma or Beta value.
"""
import logging

import numpy as np
from scipy import special

from boojum_dist.errors import DomainError

logger = logging.getLogger(__name__)

# below this, psi is shifted through the recurrence psi(x) = psi(x+1) - 1/x
DIGAMMA_SHIFT_BELOW = 1e-3


def _check_positive(x, name='x'):
    arr = np.asarray(x, dtype=float)
    if arr.size == 0:
        raise DomainError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {x!r}")
    if np.any(arr <= 0):
        raise DomainError(f"{name} must be strictly positive, got {x!r}")
    return arr


def positive_vector(values):
    """
    Validate ``values`` as a PositiveVector: a 1-d float array of length
    K >= 1 with strictly positive finite entries.
    """
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise DomainError(f"expected a vector, got shape {arr.shape}")
    return _check_positive(arr, 'vector')


def log_gamma(x):
    """
    log Gamma(x) for x > 0. Scalars give a float, arrays an array.
    """
    arr = _check_positive(x)
    out = special.gammaln(arr)
    if arr.ndim == 0:
        return float(out)
    return out


def digamma(x):
    """
    Psi(x) = d/dx log Gamma(x) for x > 0.
    """
    arr = _check_positive(x)
    small = arr < DIGAMMA_SHIFT_BELOW
    out = np.where(small,
                   special.psi(arr + 1.0) - 1.0 / arr,
                   special.psi(arr))
    if arr.ndim == 0:
        return float(out)
    return out


def log_multivariate_beta(x):
    """
    log B(x) = sum_k log Gamma(x_k) - log Gamma(sum_k x_k)
    """
    x = positive_vector(x)
    return float(np.sum(special.gammaln(x)) - special.gammaln(np.sum(x)))


def log_sum_exp(v, axis=None):
    """
    Computes log(sum(exp(v))) with a max shift so that large entries never
    overflow. Entries may be -inf; an all -inf reduction gives -inf.

    :param v: array_like of reals, non-empty, no NaN or +inf
    :param axis: reduction axis, ``None`` reduces everything to a float
    """
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise DomainError("log_sum_exp of an empty vector")
    if np.any(np.isnan(v)) or np.any(np.isposinf(v)):
        raise DomainError("log_sum_exp input holds NaN or +inf")

    vmax = np.max(v, axis=axis, keepdims=True)
    shift = np.where(np.isfinite(vmax), vmax, 0.0)
    with np.errstate(divide='ignore'):
        out = np.log(np.sum(np.exp(v - shift), axis=axis,
                            keepdims=True)) + shift

    if axis is None:
        return float(out.reshape(()))
    return np.squeeze(out, axis=axis)


def log_mean_exp(v, axis=None):
    """
    log(mean(exp(v))), see ``log_sum_exp``.
    """
    v = np.asarray(v, dtype=float)
    n = v.size if axis is None else v.shape[axis]
    return log_sum_exp(v, axis) - np.log(n)
