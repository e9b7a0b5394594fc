"""
Estimation of the Boojum normalizing constant.

With x = s t (s the coordinate sum, t on the simplex) and dx = s^(K-1) ds dt,

    Z(m, r) = int_0^inf s^(K-1) Zbar(s) ds,
    Zbar(s) = int_T B(s t)^-m exp(-s <r, t>) dt.

Zbar(s) factorizes over t once Gamma(s)^m is pulled out, so it is computed
with the simplex lattice. The outer integral is an importance average over
s ~ Gamma(K, rho):

    Z = Gamma(K) / rho^K * E[Zbar(s) exp(rho s)].
"""
import concurrent.futures
import dataclasses
import functools
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from boojum_dist.errors import (DomainError, ImproperParametersError,
                                ResolutionError)
from boojum_dist.params import BoojumParams, classify
from boojum_dist.simplex_lattice import LatticeSpec, integrate_simplex
from boojum_dist.special_fn import (log_gamma, log_multivariate_beta,
                                    log_mean_exp, positive_vector)

logger = logging.getLogger(__name__)

AUTO = 'auto'
AUTO_RHO_FRACTION = 0.5
_SEED_LIMIT = 2 ** 64
_FEW_FINITE_TERMS = 5


@dataclass(frozen=True)
class RadialPoint:
    s: float
    t: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        if not (math.isfinite(self.s) and self.s > 0):
            raise DomainError(f"s must be positive, got {self.s!r}")
        if t.ndim != 1 or t.size == 0 or np.any(t < 0):
            raise DomainError("t must be a nonnegative vector")
        if abs(math.fsum(t) - 1.0) > 1e-12:
            raise DomainError(f"t must sum to 1, got {math.fsum(t)!r}")
        object.__setattr__(self, 's', float(self.s))
        object.__setattr__(self, 't', t)


def radial_decompose(x) -> RadialPoint:
    x = positive_vector(x)
    s = math.fsum(x)
    return RadialPoint(s, x / s)


def radial_recompose(point: RadialPoint):
    return point.s * point.t


def log_unnormalized_density(params: BoojumParams, x) -> float:
    """
    -m log B(x) - <r, x>. Properness of ``params`` is not required.
    """
    x = positive_vector(x)
    if x.size != params.K:
        raise DomainError(
            f"x has length {x.size}, parameters have K={params.K}")
    log_beta = log_multivariate_beta(x) if params.m != 0 else 0.0
    return -params.m * log_beta - float(np.dot(params.rates, x))


def auto_rho(params: BoojumParams) -> float:
    """
    Default pivot: half the smallest rate. Zbar(s) exp(rho s) stays bounded
    for m = 0 whenever rho <= min r.
    """
    lowest = min(params.r)
    if lowest <= 0:
        raise DomainError(
            "the automatic pivot needs positive rates, pass an explicit rho")
    return AUTO_RHO_FRACTION * lowest


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Settings of the log Z estimator.

    Params:

      - ``grid_n`` (default: ``500``): lattice resolution N, at least 2

      - ``samples_p`` (default: ``2000``): number P of Gamma pivot samples

      - ``rho`` (default: ``'auto'``): pivot rate of the Gamma(K, rho)
        sample; ``'auto'`` resolves to half the smallest rate

      - ``seed`` (default: ``0``): unsigned 64-bit seed of the pivot draws

      - ``workers`` (default: ``1``): threads evaluating per-sample terms.
        Results do not depend on it
    """
    grid_n: int = 500
    samples_p: int = 2000
    rho: Union[float, str] = AUTO
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for name, lowest in (('grid_n', 2), ('samples_p', 1), ('workers', 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(
                    value, (int, np.integer)) or value < lowest:
                raise DomainError(
                    f"{name} must be an integer >= {lowest}, got {value!r}")
        if isinstance(self.seed, bool) or not isinstance(
                self.seed, (int, np.integer)) or \
                not 0 <= self.seed < _SEED_LIMIT:
            raise DomainError(
                f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.rho != AUTO:
            try:
                rho = float(self.rho)
            except (TypeError, ValueError):
                raise DomainError(
                    f"rho must be positive or 'auto', got {self.rho!r}")
            if not (math.isfinite(rho) and rho > 0):
                raise DomainError(
                    f"rho must be positive or 'auto', got {self.rho!r}")
            object.__setattr__(self, 'rho', rho)

    @property
    def is_resolved(self):
        return self.rho != AUTO

    def resolve(self, params: BoojumParams) -> 'EstimatorConfig':
        """
        Copy with an explicit pivot.
        """
        if self.is_resolved:
            return self
        return dataclasses.replace(self, rho=auto_rho(params))

    def to_record(self):
        return {'grid_n': self.grid_n, 'samples_p': self.samples_p,
                'rho': self.rho, 'seed': self.seed}


@dataclass(frozen=True)
class LogZEstimate:
    """
    Estimated log Z with its log-scale standard error. ``config`` echoes
    the settings used, with the pivot resolved.
    """
    log_z: float
    std_err: float
    config: EstimatorConfig

    def to_record(self):
        return {'log_z': self.log_z, 'std_err': self.std_err,
                'config': self.config.to_record()}


@functools.lru_cache(maxsize=64)
def _cached_draws(seed, shape, count):
    draws = np.empty(count)
    for p in range(count):
        # one Philox counter block per sample index keeps streams disjoint
        rng = np.random.Generator(np.random.Philox(key=seed, counter=p << 64))
        draws[p] = rng.standard_gamma(shape)
    draws.flags.writeable = False
    return draws


def gamma_pivot_draws(seed: int, shape: float, count: int):
    """
    ``count`` standard Gamma(shape, 1) variates; draw p comes from its own
    counter-based substream, so it depends only on (seed, p). Dividing by
    rho gives a Gamma(shape, rho) sample.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    return _cached_draws(int(seed), float(shape), int(count))


def lattice_log_weights(params: BoojumParams, s: float, grid_n: int):
    """
    K x (N+1) array of -m log Gamma(s n/N) - r_k s n/N.

    Boundary entries (n = 0) are -inf when m != 0: log Gamma(0+) is +inf,
    which is a zero weight for m > 0 and is suppressed for m < 0, biasing
    the integral slightly downwards until N grows.
    """
    u = s * np.arange(grid_n + 1) / grid_n
    weights = -np.outer(params.rates, u)
    if params.m != 0:
        lg = np.empty_like(u)
        lg[0] = 0.0
        lg[1:] = log_gamma(u[1:])
        weights -= params.m * lg[np.newaxis, :]
        weights[:, 0] = -np.inf
    return weights


def log_zbar(params: BoojumParams, s: float, grid_n: int) -> float:
    """
    log of the conditional normalizer Zbar(s) at lattice resolution
    ``grid_n``.
    """
    if not (math.isfinite(s) and s > 0):
        raise DomainError(f"s must be positive, got {s!r}")
    weights = lattice_log_weights(params, s, grid_n)
    log_t = integrate_simplex(weights, LatticeSpec(grid_n, params.K))
    if params.m == 0:
        return log_t
    return params.m * log_gamma(s) + log_t


def _guard(params, force):
    verdict = classify(params)
    if verdict.proper:
        return
    detail = verdict.reason.value
    if verdict.t_value is not None:
        detail += f" (T = {verdict.t_value!r} >= 1)"
    if not force:
        raise ImproperParametersError(
            f"m={params.m!r}, r={list(params.r)!r}: {detail}")
    logger.warning(f"Estimating log Z for improper parameters: {detail}")


def estimate_log_z(params: BoojumParams, config: EstimatorConfig = None,
                   force=False) -> LogZEstimate:
    """
    Estimate log Z(m, r).

    :param params: Boojum parameters, proper unless ``force`` is set
    :param config: estimator settings, defaults to ``EstimatorConfig()``
    :param force: evaluate improper parameters anyway (divergence probing)
    :return: LogZEstimate with the resolved configuration
    """
    _guard(params, force)
    config = (config or EstimatorConfig()).resolve(params)
    K, N, P, rho = params.K, config.grid_n, config.samples_p, config.rho
    logger.debug(f"Estimating log Z for m={params.m}, K={K}: "
                 f"N={N}, P={P}, rho={rho}, seed={config.seed}")
    if params.m != 0:
        logger.debug(f"{K} boundary weights per sample suppressed "
                     f"(m={params.m})")

    s = gamma_pivot_draws(config.seed, K, P) / rho

    def _term(s_p):
        return log_zbar(params, s_p, N)

    if config.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(config.workers) as pool:
            zbar = list(pool.map(_term, s))
    else:
        zbar = [_term(s_p) for s_p in s]
    terms = np.asarray(zbar) + rho * s

    finite = np.isfinite(terms)
    if not np.any(finite):
        raise ResolutionError(
            f"every per-sample term is -inf at N={N}, P={P}")
    n_finite = np.count_nonzero(finite)
    if n_finite < P:
        logger.debug(f"{P - n_finite} of {P} per-sample terms are -inf")
        if n_finite <= _FEW_FINITE_TERMS:
            logger.warning(f"only {n_finite} of {P} per-sample terms are "
                           f"finite at N={N}; the estimate is unreliable")

    log_z = math.lgamma(K) - K * math.log(rho) + log_mean_exp(terms)

    w = np.exp(terms - np.max(terms))
    if P > 1:
        std_err = float(np.std(w, ddof=1) / (math.sqrt(P) * np.mean(w)))
    else:
        std_err = 0.0
    return LogZEstimate(float(log_z), std_err, config)


def doubling_schedule(params: BoojumParams, base: EstimatorConfig = None,
                      steps=4):
    """
    ``steps`` configurations starting at ``base`` (pivot resolved), each
    doubling grid_n and samples_p and halving rho, which stretches the
    sampled s-range.
    """
    base = (base or EstimatorConfig()).resolve(params)
    return [dataclasses.replace(base,
                                grid_n=base.grid_n * 2 ** i,
                                samples_p=base.samples_p * 2 ** i,
                                rho=base.rho / 2 ** i)
            for i in range(steps)]


def divergence_probe(params: BoojumParams, resolutions):
    """
    Forced estimates of log Z at each configuration of ``resolutions``.
    No verdict is drawn; an improper Z shows up as values that keep
    growing instead of settling.
    """
    estimates = []
    for config in resolutions:
        estimate = estimate_log_z(params, config, force=True)
        logger.info(f"Probe N={estimate.config.grid_n} "
                    f"P={estimate.config.samples_p} "
                    f"rho={estimate.config.rho}: log Z = {estimate.log_z} "
                    f"+/- {estimate.std_err}")
        estimates.append(estimate)
    return estimates
