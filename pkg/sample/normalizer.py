import logging
import math

import boojum_dist
from boojum_dist import BoojumParams, EstimatorConfig

logging.basicConfig(level=logging.INFO,
                    format='%(asctime)s [%(levelname)s] %(message)s')

# Shape and rates to estimate log Z for
M = 0.5
R = (2.0, 3.0, 1.5)

# Lattice resolution, pivot sample size and seed
GRID_N = 500
SAMPLES_P = 2000
SEED = 42


if __name__ == '__main__':
    params = BoojumParams(M, R)
    verdict = boojum_dist.classify(params)
    print(f'verdict: {verdict.to_record()}')
    if not verdict.proper:
        raise SystemExit(2)

    config = EstimatorConfig(grid_n=GRID_N, samples_p=SAMPLES_P, seed=SEED,
                             workers=4)
    estimate = boojum_dist.estimate_log_z(params, config)
    print(f'log Z = {estimate.log_z:.4f} +/- {estimate.std_err:.4f}')

    # m = 0 is a product of exponentials, a quick sanity check
    independent = BoojumParams(0.0, R)
    check = boojum_dist.estimate_log_z(independent, config)
    exact = -sum(math.log(v) for v in R)
    print(f'm = 0: estimated {check.log_z:.4f}, exact {exact:.4f}')
