"""
Conjugate updates under Dirichlet observations, and moments of
Boojum(m, r).

Moments come from derivatives of Z in r,

    M_n = (-1)^|n| / Z * d^|n| Z / prod_k dr_k^n_k,

taken by central differences of the log Z estimator. Every estimate of a
coupled group shares one seed and one resolved pivot, so all of them see
the same s_p draws and their differences are smooth in r.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from boojum_dist.errors import (DomainError, ImproperParametersError,
                                ObservationError, StepError,
                                UnsupportedOrderError)
from boojum_dist.params import BoojumParams, classify
from boojum_dist.special_fn import log_multivariate_beta, positive_vector
from boojum_dist.z_estimator import (AUTO_RHO_FRACTION, EstimatorConfig,
                                     auto_rho, estimate_log_z)

logger = logging.getLogger(__name__)

RELATIVE_STEP = 1e-3
MAX_ORDER = 2


@dataclass(frozen=True)
class DirichletObservation:
    """
    A point ``y`` in the interior of the simplex.
    """
    y: Tuple[float, ...]

    def __post_init__(self):
        try:
            y = np.atleast_1d(np.asarray(self.y, dtype=float))
        except (TypeError, ValueError) as e:
            raise ObservationError(f"malformed observation: {e}")
        if y.ndim != 1 or y.size == 0:
            raise ObservationError("observation must be a non-empty vector")
        if not np.all(np.isfinite(y)) or np.any(y < 0) or np.any(y > 1):
            raise ObservationError("components must lie in (0, 1]")
        if np.any(y == 0):
            raise ObservationError("zero component")
        if abs(math.fsum(y) - 1.0) > 1e-12:
            raise ObservationError(
                f"components sum to {math.fsum(y)!r}, not 1")
        object.__setattr__(self, 'y', tuple(y))

    @property
    def K(self):
        return len(self.y)


@dataclass(frozen=True)
class MomentRequest:
    """
    Multi-index ``order`` of the moment E[prod_k x_k^n_k]; total order at
    most 2.
    """
    order: Tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        if len(order) == 0 or not all(
                isinstance(n, (int, np.integer)) and not isinstance(n, bool)
                and n >= 0 for n in order):
            raise DomainError(
                f"order must hold nonnegative integers, got {self.order!r}")
        if sum(order) > MAX_ORDER:
            raise UnsupportedOrderError(
                f"order above {MAX_ORDER} unsupported, got {order}")
        object.__setattr__(self, 'order', tuple(int(n) for n in order))

    @property
    def total(self):
        return sum(self.order)


def log_dirichlet_density(y, x) -> float:
    """
    log Dirichlet(y; x) = -log B(x) + sum_k (x_k - 1) log y_k
    """
    if not isinstance(y, DirichletObservation):
        y = DirichletObservation(y)
    x = positive_vector(x)
    if x.size != y.K:
        raise DomainError(f"x has length {x.size}, y has length {y.K}")
    return -log_multivariate_beta(x) + float(np.dot(x - 1.0, np.log(y.y)))


def posterior(prior: BoojumParams, observations) -> BoojumParams:
    """
    Boojum(m + N, r - sum_n log y_n) after N Dirichlet observations.
    """
    observations = [o if isinstance(o, DirichletObservation)
                    else DirichletObservation(o) for o in observations]
    if not observations:
        return prior
    for o in observations:
        if o.K != prior.K:
            raise DomainError(
                f"observation of length {o.K} for a prior with K={prior.K}")
    log_y = np.log(np.array([o.y for o in observations]))
    r = prior.rates - np.sum(log_y, axis=0)
    return BoojumParams(prior.m + len(observations), tuple(r))


def resolve_coupled(config: EstimatorConfig, params: BoojumParams,
                    *shifted: BoojumParams) -> EstimatorConfig:
    """
    Resolve the pivot once for a group of coupled estimates. ``'auto'``
    takes the base parameters' pivot, lowered to half the smallest rate of
    ``shifted`` only when one of those rates does not exceed it.
    """
    config = config or EstimatorConfig()
    if config.is_resolved:
        return config
    rho = auto_rho(params)
    for other in shifted:
        lowest = min(other.r)
        if lowest <= rho:
            rho = min(rho, AUTO_RHO_FRACTION * lowest)
    return dataclasses.replace(config, rho=rho)


def _require_proper(params):
    verdict = classify(params)
    if not verdict.proper:
        raise ImproperParametersError(
            f"m={params.m!r}, r={list(params.r)!r}: {verdict.reason.value}")


def log_mgf(params: BoojumParams, v, config: EstimatorConfig = None) -> float:
    """
    log phi(v) = log Z(m, r - v) - log Z(m, r), both sides estimated with
    common random numbers.
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.shape != (params.K,):
        raise DomainError(
            f"v has shape {v.shape}, parameters have K={params.K}")
    shifted = params.with_rates(params.rates - v)
    _require_proper(params)
    _require_proper(shifted)
    if not np.any(v):
        return 0.0
    config = resolve_coupled(config, params, shifted)
    base = estimate_log_z(params, config).log_z
    return estimate_log_z(shifted, config).log_z - base


def mgf(params: BoojumParams, v, config: EstimatorConfig = None) -> float:
    return math.exp(log_mgf(params, v, config))


def _steps(params):
    steps = RELATIVE_STEP * params.rates
    for k, (r_k, eps) in enumerate(zip(params.r, steps)):
        if r_k - eps <= 0:
            raise StepError(f"r_{k} - eps = {r_k - eps!r} is not positive")
    return steps


def _perturbed(params, deltas):
    return params.with_rates(params.rates + np.asarray(deltas))


def _log_z_at(params, deltas, config):
    shifted = _perturbed(params, deltas)
    _require_proper(shifted)
    return estimate_log_z(shifted, config).log_z


def _mean_component(params, k, steps, config):
    e_k = np.zeros(params.K)
    e_k[k] = steps[k]
    logger.debug(f"Differencing log Z along r_{k} with step {steps[k]}")
    up = _log_z_at(params, e_k, config)
    down = _log_z_at(params, -e_k, config)
    return -(up - down) / (2 * steps[k])


def mean(params: BoojumParams, config: EstimatorConfig = None):
    """
    E[x] = -grad_r log Z(m, r), by central differences with step
    1e-3 r_k per coordinate.
    """
    _require_proper(params)
    steps = _steps(params)
    config = resolve_coupled(config, params)
    return np.array([_mean_component(params, k, steps, config)
                     for k in range(params.K)])


def moment(params: BoojumParams, req: MomentRequest,
           config: EstimatorConfig = None) -> float:
    """
    Moment E[prod_k x_k^n_k] for total order up to 2. Second order uses
    second differences of Z itself (ratios to the base Z), not of log Z.
    """
    if not isinstance(req, MomentRequest):
        req = MomentRequest(req)
    if len(req.order) != params.K:
        raise DomainError(
            f"order has length {len(req.order)}, parameters have K={params.K}")
    _require_proper(params)
    if req.total == 0:
        return 1.0
    steps = _steps(params)
    config = resolve_coupled(config, params)
    if req.total == 1:
        return float(_mean_component(params, req.order.index(1), steps,
                                     config))

    K = params.K
    base = estimate_log_z(params, config).log_z

    def ratio(deltas):
        return math.exp(_log_z_at(params, deltas, config) - base)

    active = [k for k, n in enumerate(req.order) for _ in range(n)]
    j, k = active
    e_j = np.zeros(K)
    e_j[j] = steps[j]
    if j == k:
        second = (ratio(e_j) - 2.0 + ratio(-e_j)) / steps[j] ** 2
    else:
        e_k = np.zeros(K)
        e_k[k] = steps[k]
        second = (ratio(e_j + e_k) - ratio(e_j - e_k)
                  - ratio(-e_j + e_k) + ratio(-e_j - e_k)) \
            / (4 * steps[j] * steps[k])
    # (-1)^2
    return float(second)


def expected_log_beta(params: BoojumParams,
                      config: EstimatorConfig = None) -> float:
    """
    E[log B(x)] = -d log Z / dm, the expected statistic paired with m.
    """
    _require_proper(params)
    h = RELATIVE_STEP * max(1.0, abs(params.m))
    config = resolve_coupled(config, params)
    up = BoojumParams(params.m + h, params.r)
    down = BoojumParams(params.m - h, params.r)
    _require_proper(up)
    _require_proper(down)
    return -(estimate_log_z(up, config).log_z
             - estimate_log_z(down, config).log_z) / (2 * h)
