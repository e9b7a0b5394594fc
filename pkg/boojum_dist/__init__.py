from .params import (BoojumParams, PropernessVerdict, Reason, classify,
                     boundary_margin, analytic_log_z)
from .z_estimator import (EstimatorConfig, LogZEstimate, estimate_log_z,
                          divergence_probe)
from .inference import (DirichletObservation, MomentRequest, posterior,
                        log_mgf, mgf, mean, moment, expected_log_beta)

__all__ = [
    'BoojumParams', 'PropernessVerdict', 'Reason', 'classify',
    'boundary_margin', 'analytic_log_z',
    'EstimatorConfig', 'LogZEstimate', 'estimate_log_z', 'divergence_probe',
    'DirichletObservation', 'MomentRequest', 'posterior', 'log_mgf', 'mgf',
    'mean', 'moment', 'expected_log_beta',
]
__version__ = '0.1.0'
