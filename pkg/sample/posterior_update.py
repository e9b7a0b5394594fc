import numpy as np

import boojum_dist
from boojum_dist import BoojumParams, EstimatorConfig

# Prior over Dirichlet concentration vectors
PRIOR_M = 0.0
PRIOR_R = (1.0, 1.0, 1.0)

# Concentration the observations are drawn from
TRUE_X = (2.0, 5.0, 3.0)
N_OBSERVATIONS = 20
SEED = 7


if __name__ == '__main__':
    rng = np.random.default_rng(SEED)
    observations = [tuple(y / y.sum())
                    for y in rng.dirichlet(TRUE_X, N_OBSERVATIONS)]

    post = boojum_dist.posterior(BoojumParams(PRIOR_M, PRIOR_R),
                                 observations)
    print(f'posterior: {post.to_record()}')
    print(f'verdict: {boojum_dist.classify(post).to_record()}')

    config = EstimatorConfig(samples_p=4000, seed=SEED, workers=4)
    print(f'posterior mean of x: {boojum_dist.mean(post, config)}')
    print(f'E[log B(x)]: {boojum_dist.expected_log_beta(post, config):.4f}')
