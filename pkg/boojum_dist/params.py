"""
Boojum(m, r) parameters and the exact properness criterion.

The density on the positive orthant is proportional to
B(x)^-m exp(-<r, x>). It is proper iff every r_k > 0, m > -1 and, when
m > 0, T = sum_k exp(-r_k / m) < 1.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from boojum_dist.errors import DomainError

logger = logging.getLogger(__name__)


class Reason(Enum):
    RateNonpositive = "RateNonpositive"
    ShapeAtOrBelowMinusOne = "ShapeAtOrBelowMinusOne"
    BoundaryTAtLeastOne = "BoundaryTAtLeastOne"
    Proper = "Proper"


@dataclass(frozen=True)
class BoojumParams:
    """
    Shape ``m`` and rate vector ``r``. Improper values are accepted so they
    can be classified; only finiteness and K >= 1 are enforced.
    """
    m: float
    r: Tuple[float, ...]

    def __post_init__(self):
        try:
            m = float(self.m)
            r = tuple(float(v) for v in np.atleast_1d(self.r))
        except (TypeError, ValueError) as e:
            raise DomainError(f"malformed parameters: {e}")
        if not math.isfinite(m):
            raise DomainError(f"m must be finite, got {self.m!r}")
        if len(r) < 1:
            raise DomainError("r must hold at least one rate")
        if not all(math.isfinite(v) for v in r):
            raise DomainError(f"r must be finite, got {self.r!r}")
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'r', r)

    @property
    def K(self):
        return len(self.r)

    @property
    def rates(self):
        return np.asarray(self.r, dtype=float)

    def with_rates(self, r):
        return BoojumParams(self.m, tuple(r))

    def to_record(self):
        return {'m': self.m, 'r': list(self.r)}

    @classmethod
    def from_record(cls, record):
        try:
            return cls(record['m'], tuple(record['r']))
        except (KeyError, TypeError) as e:
            raise DomainError(f"parameter record needs keys 'm' and 'r': {e}")


@dataclass(frozen=True)
class PropernessVerdict:
    proper: bool
    reason: Reason
    t_value: Optional[float] = None

    def to_record(self):
        record = {'proper': self.proper, 'reason': self.reason.value}
        if self.t_value is not None:
            record['t_value'] = self.t_value
        return record


def boundary_t(params: BoojumParams) -> Optional[float]:
    """
    T = sum_k exp(-r_k / m), defined when m > 0 and r > 0.
    """
    if params.m <= 0 or any(v <= 0 for v in params.r):
        return None
    return math.fsum(math.exp(-v / params.m) for v in params.r)


def classify(params: BoojumParams) -> PropernessVerdict:
    """
    Exact properness classification. Only the first failed condition is
    reported, checked in the order rates, shape, boundary. T == 1 is
    improper; no tolerance is applied.
    """
    t_value = boundary_t(params)
    if any(v <= 0 for v in params.r):
        return PropernessVerdict(False, Reason.RateNonpositive)
    if params.m <= -1:
        return PropernessVerdict(False, Reason.ShapeAtOrBelowMinusOne)
    if t_value is not None and not t_value < 1:
        return PropernessVerdict(False, Reason.BoundaryTAtLeastOne, t_value)
    return PropernessVerdict(True, Reason.Proper, t_value)


def boundary_margin(params: BoojumParams) -> Optional[float]:
    """
    1 - T, or ``None`` unless m > 0 and r > 0. Callers pick their own
    tolerance around zero.
    """
    t_value = boundary_t(params)
    if t_value is None:
        return None
    return 1.0 - t_value


def analytic_log_z(params: BoojumParams) -> Optional[float]:
    """
    Closed-form log Z(m, r) where one is known, else ``None``.

    K = 1 has B(x) = 1, leaving a single exponential: -log r for any proper
    m. m = 0 is a product of exponentials: -sum_k log r_k.
    """
    if not classify(params).proper:
        return None
    if params.K == 1 or params.m == 0:
        return -math.fsum(math.log(v) for v in params.r)
    return None
