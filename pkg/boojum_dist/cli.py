"""
Command-line front end.

Every command prints one JSON record on stdout (``--pretty`` indents it).
Exit codes: 0 success, 1 usage or input error, 2 improper parameters.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import pandas as pd

from boojum_dist import __version__
from boojum_dist.errors import (BoojumError, ImproperParametersError,
                                ObservationError)
from boojum_dist.inference import (DirichletObservation, MomentRequest,
                                   log_mgf, mean, moment, posterior,
                                   resolve_coupled)
from boojum_dist.params import (BoojumParams, analytic_log_z, classify)
from boojum_dist.z_estimator import (AUTO, EstimatorConfig,
                                     divergence_probe, doubling_schedule,
                                     estimate_log_z)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IMPROPER = 2

LOG_FORMAT = ('%(asctime)s [%(levelname)s] %(message)s '
              '(%(filename)s:%(lineno)s)')
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _reals(text):
    try:
        return [float(v) for v in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated reals, got {text!r}")


def _ints(text):
    try:
        return [int(v) for v in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}")


def _range(text):
    bounds = _reals(text)
    if len(bounds) != 2 or not bounds[0] < bounds[1]:
        raise argparse.ArgumentTypeError(
            f"expected lo,hi with lo < hi, got {text!r}")
    return tuple(bounds)


def _rho(text):
    if text == AUTO:
        return AUTO
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a positive real or 'auto', got {text!r}")


@dataclass
class RegionScan:
    """
    Properness over a K = 2 grid of rates at fixed shape ``m``. Each row is
    (r1, r2, proper, t_value); t_value is NaN when m <= 0.
    """
    m: float
    r1_range: Tuple[float, float, int]
    r2_range: Tuple[float, float, int]
    rows: List[tuple] = field(default_factory=list)

    def to_frame(self):
        frame = pd.DataFrame(self.rows,
                             columns=['r1', 'r2', 'proper', 't_value'])
        frame['proper'] = frame['proper'].astype(int)
        return frame


def scan_region(m, r1_range, r2_range, steps) -> RegionScan:
    if steps < 2:
        raise UsageError(f"--steps must be >= 2, got {steps}")
    scan = RegionScan(m, (*r1_range, steps), (*r2_range, steps))
    for r1 in np.linspace(r1_range[0], r1_range[1], steps):
        for r2 in np.linspace(r2_range[0], r2_range[1], steps):
            verdict = classify(BoojumParams(m, (r1, r2)))
            t_value = verdict.t_value if verdict.t_value is not None \
                else np.nan
            scan.rows.append((float(r1), float(r2), int(verdict.proper),
                              t_value))
    return scan


def _params(args):
    return BoojumParams(args.m, tuple(args.r))


def _config(args):
    return EstimatorConfig(grid_n=args.grid_n, samples_p=args.samples,
                           rho=args.rho, seed=args.seed,
                           workers=args.workers)


def cmd_check(args):
    verdict = classify(_params(args))
    return verdict.to_record(), \
        EXIT_OK if verdict.proper else EXIT_IMPROPER


def cmd_logz(args):
    params = _params(args)
    estimate = estimate_log_z(params, _config(args), force=args.force)
    record = estimate.to_record()
    if args.exact:
        record['exact'] = analytic_log_z(params)
    return record, EXIT_OK


def read_observations(path):
    """
    Parse a file of line-delimited ``{"y": [...]}`` records. Blank lines
    are skipped; errors carry the 1-based line number.
    """
    observations = []
    with open(path, 'rb') as f:
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line.decode('utf-8'))
                y = record['y']
            except (ValueError, KeyError, TypeError):
                raise ObservationError("malformed record", line=line_no)
            try:
                observations.append(DirichletObservation(y))
            except ObservationError as e:
                raise ObservationError(e.description, line=line_no)
    return observations


def cmd_posterior(args):
    prior = BoojumParams(args.prior_m, tuple(args.prior_r))
    post = posterior(prior, read_observations(args.obs))
    record = post.to_record()
    verdict = classify(post)
    record['proper'] = verdict.proper
    record['reason'] = verdict.reason.value
    return record, EXIT_OK


def cmd_mean(args):
    params = _params(args)
    config = _config(args)
    values = mean(params, config)
    return {'mean': [float(v) for v in values],
            'config': resolve_coupled(config, params).to_record()}, EXIT_OK


def cmd_moment(args):
    params = _params(args)
    req = MomentRequest(tuple(args.order))
    config = _config(args)
    value = moment(params, req, config)
    return {'order': list(req.order), 'moment': value,
            'config': resolve_coupled(config, params).to_record()}, EXIT_OK


def cmd_mgf(args):
    params = _params(args)
    config = _config(args)
    value = log_mgf(params, args.v, config)
    shifted = params.with_rates(params.rates - np.asarray(args.v))
    return {'v': list(args.v), 'log_mgf': value,
            'config': resolve_coupled(config, params, shifted).to_record()
            }, EXIT_OK


def cmd_probe(args):
    params = _params(args)
    schedule = doubling_schedule(params, _config(args), args.steps)
    estimates = divergence_probe(params, schedule)
    return {'verdict': classify(params).to_record(),
            'estimates': [e.to_record() for e in estimates]}, EXIT_OK


def cmd_region(args):
    scan = scan_region(args.m, args.r1, args.r2, args.steps)
    frame = scan.to_frame()
    try:
        frame.to_csv(args.out, index=False, na_rep='', lineterminator='\n')
    except OSError as e:
        raise UsageError(f"cannot write {args.out}: {e}")
    return {'out': args.out, 'rows': len(frame),
            'proper_rows': int(frame['proper'].sum())}, EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--pretty', action='store_true',
                        help='indent the output record')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='log to stderr')

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument('-m', '--m', dest='m', type=float, required=True,
                       help='shape m')

    rates = argparse.ArgumentParser(add_help=False)
    rates.add_argument('-r', dest='r', type=_reals, required=True,
                       help='comma-separated rate vector r')

    estimator = argparse.ArgumentParser(add_help=False)
    estimator.add_argument('--grid-n', type=int, default=500,
                           help='lattice resolution N (default: 500)')
    estimator.add_argument('--samples', type=int, default=2000,
                           help='Gamma pivot sample count P (default: 2000)')
    estimator.add_argument('--rho', type=_rho, default=AUTO,
                           help="pivot rate, or 'auto' (default)")
    estimator.add_argument('--seed', type=int, default=0,
                           help='seed of the pivot draws (default: 0)')
    estimator.add_argument('--workers', type=int, default=1,
                           help='threads for per-sample terms (default: 1)')

    parser = _Parser(prog='boojum',
                     description='Boojum distribution: properness, '
                                 'normalizing constant, conjugate updates '
                                 'and moments.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('check', parents=[common, shape, rates],
                       help='exact properness verdict')
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser('logz', parents=[common, shape, rates, estimator],
                       help='estimate log Z(m, r)')
    p.add_argument('--force', action='store_true',
                   help='estimate even for improper parameters')
    p.add_argument('--exact', action='store_true',
                   help='add the closed-form log Z when one exists')
    p.set_defaults(handler=cmd_logz)

    p = sub.add_parser('posterior', parents=[common],
                       help='conjugate update from Dirichlet observations')
    p.add_argument('--prior-m', type=float, required=True)
    p.add_argument('--prior-r', type=_reals, required=True)
    p.add_argument('--obs', required=True,
                   help='file of line-delimited {"y": [...]} records')
    p.set_defaults(handler=cmd_posterior)

    p = sub.add_parser('mean', parents=[common, shape, rates, estimator],
                       help='expectation -grad_r log Z')
    p.set_defaults(handler=cmd_mean)

    p = sub.add_parser('moment', parents=[common, shape, rates, estimator],
                       help='moment of total order up to 2')
    p.add_argument('--order', type=_ints, required=True,
                   help='comma-separated multi-index, e.g. 1,1')
    p.set_defaults(handler=cmd_moment)

    p = sub.add_parser('mgf', parents=[common, shape, rates, estimator],
                       help='log moment generating function at v')
    p.add_argument('--v', type=_reals, required=True,
                   help='comma-separated argument v')
    p.set_defaults(handler=cmd_mgf)

    p = sub.add_parser('probe', parents=[common, shape, rates, estimator],
                       help='forced estimates over a doubling schedule')
    p.add_argument('--steps', type=int, default=4,
                   help='number of doublings (default: 4)')
    p.set_defaults(handler=cmd_probe)

    p = sub.add_parser('region', parents=[common, shape],
                       help='K = 2 properness scan written as CSV')
    p.add_argument('--r1', type=_range, required=True, help='lo,hi')
    p.add_argument('--r2', type=_range, required=True, help='lo,hi')
    p.add_argument('--steps', type=int, default=100,
                   help='grid points per axis (default: 100)')
    p.add_argument('--out', required=True, help='CSV output path')
    p.set_defaults(handler=cmd_region)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

    try:
        record, code = args.handler(args)
    except ImproperParametersError as e:
        print(f"boojum: {e}", file=sys.stderr)
        return EXIT_IMPROPER
    except (BoojumError, UsageError, OSError) as e:
        print(f"boojum: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(json.dumps(record, indent=2 if args.pretty else None))
    return code


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
