import math

import numpy as np
import pytest
from scipy import integrate, special


def _log_density(m, r, x1, x2):
    log_beta = special.gammaln(x1) + special.gammaln(x2) \
        - special.gammaln(x1 + x2)
    return -m * log_beta - r[0] * x1 - r[1] * x2


def quadrature_integral(m, r, weight=None, radius=30.0):
    """
    Adaptive 2-D quadrature of g(x) B(x)^-m exp(-<r, x>) over the square
    [0, radius]^2. The density decays at least like exp(-min(r) |x|), so
    the default radius leaves a tail far below 1e-6 of the integral for the
    parameters used in the tests.
    """
    weight = weight or (lambda x1, x2: 1.0)

    def integrand(x2, x1):
        if x1 <= 0 or x2 <= 0:
            return 0.0
        return weight(x1, x2) * math.exp(_log_density(m, r, x1, x2))

    value, _ = integrate.dblquad(integrand, 0.0, radius, 0.0, radius,
                                 epsabs=1e-13, epsrel=1e-9)
    return value


@pytest.fixture
def quadrature_oracle():
    """Independent brute-force reference for K = 2 normalizers and moments"""
    return quadrature_integral


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)
