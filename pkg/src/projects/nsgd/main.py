#!/usr/bin/env python3

from contextlib import contextmanager
import argparse
import logging
import os
import sys
import tempfile

from ...lib import cli
from ...lib.ol2r import (AlgorithmConfig, ConfigurationError, CLICK_MODELS, OL2RError,
                         load_ranker, make_config)
from . import experiments

logger = logging.getLogger(__name__)

EXPERIMENT_KEYS = ('algorithm', 'dataset', 'click_model', 'iterations', 'repetitions', 'seed',
                   'reference', 'dim', 'eval_every', 'workers')
PARAM_KEYS = tuple(AlgorithmConfig._precord_fields)


@contextmanager
def output(path, force=False):
    """Yields a stream for `path` (stdout if unset). The file only appears
    once everything was written; a failed run leaves no partial CSV."""
    if not path or path == '-':
        yield sys.stdout
        return
    cli.confirm_overwrite(path, force)
    directory = os.path.dirname(os.path.abspath(path))
    fd, partial = tempfile.mkstemp(prefix='.' + os.path.basename(path) + '.', dir=directory)
    try:
        with os.fdopen(fd, 'w') as stream:
            yield stream
        os.replace(partial, path)
    finally:
        if os.path.exists(partial):
            os.remove(partial)


def experiment_config(args):
    """Builds the ExperimentConfig from parsed flags; unset flags fall back
    to the record defaults."""
    params = {key: getattr(args, key) for key in PARAM_KEYS if getattr(args, key, None) is not None}
    values = {key: getattr(args, key) for key in EXPERIMENT_KEYS if getattr(args, key, None) is not None}
    if 'preselection' in params:
        try:
            params['preselection'] = cli.parse_bool(params['preselection'])
        except ValueError as e:
            raise ConfigurationError(str(e))
    return make_config(experiments.ExperimentConfig, params=make_config(AlgorithmConfig, **params), **values)


def run(args):
    config = experiment_config(args)
    result = experiments.run_experiment(config)
    with output(args.out, args.force) as stream:
        experiments.write_csv(result, stream)
    if args.save_rankers:
        experiments.save_rankers(result, args.save_rankers)
    for metric, (mean, std) in result.summary().items():
        logger.info("%s at T=%d: %.4f (%.4f)", metric, config.iterations, mean, std)


def sweep(args):
    config = experiment_config(args)
    results = experiments.sweep(config, args.parameter, cli.parse_list(args.values))
    with output(args.out, args.force) as stream:
        experiments.write_sweep_csv(args.parameter, results, stream)


def ratio(args):
    config = experiment_config(args)
    if args.null_space_count is None:
        splits = [(c, None) for c in range(config.params.m, -1, -1)]
    else:
        splits = [(args.null_space_count, args.uniform_count)]
    reports = [experiments.selection_ratio_experiment(config, ns, uniform) for ns, uniform in splits]
    with output(args.out, args.force) as stream:
        experiments.write_ratio_csv(reports, stream)


def gen_synthetic(args):
    sizes = dict(experiments.SYNTHETIC_DEFAULTS)
    for key, flag in (('d', 'd'), ('train', 'train_queries'), ('test', 'test_queries'),
                      ('docs', 'docs_per_query'), ('seed', 'seed')):
        if getattr(args, flag) is not None:
            sizes[key] = getattr(args, flag)
    experiments.generate_synthetic(args.out, sizes['d'], sizes['train'], sizes['test'],
                                   sizes['docs'], sizes['seed'], force=args.force)


def evaluate(args):
    config = experiment_config(args)
    splits, _ = experiments.load_dataset(config)
    ranker = load_ranker(args.ranker)
    with output(args.out, args.force) as stream:
        stream.write('fold,offline_ndcg\n')
        for name, score in experiments.evaluate_ranker(ranker, splits):
            stream.write('{},{:.6f}\n'.format(name, score))


def _add_common(parser):
    parser.add_argument('--config', type=str, help='JSON file of settings; flags override it.')
    parser.add_argument('--out', type=str, help='Output file (default: stdout).')
    parser.add_argument('--force', action='store_true', help='Overwrite an existing output file.')
    parser.add_argument('-v', '--verbose', action='store_const', const=1, default=0, dest='verbosity',
                        help='Log every iteration.')
    parser.add_argument('-q', '--quiet', action='store_const', const=-1, dest='verbosity',
                        help='Only log warnings.')


def _add_dataset(parser):
    parser.add_argument('--dataset', type=str,
                        help='LETOR fold directory, a root of Fold1..Fold5, or '
                             'synthetic[:d=20,train=50,test=20,docs=10,seed=0]. (default: synthetic)')
    parser.add_argument('--dim', type=int, help='Declared feature dimension, checked against the data.')
    parser.add_argument('--reference', type=str, help='Reference ranker file for cosine similarity.')


def _add_experiment(parser):
    _add_dataset(parser)
    parser.add_argument('--algorithm', type=str,
                        help='Learner to run. (default: nsgd)\n Options: {}'.format(', '.join(experiments.learners)))
    parser.add_argument('--click-model', type=str,
                        help='Simulated user. (default: perfect)\n Options: {}'.format(', '.join(CLICK_MODELS)))
    parser.add_argument('--iterations', type=int, help='Queries per run T. (default: 1000)')
    parser.add_argument('--repetitions', type=int, help='Runs per fold. (default: 1)')
    parser.add_argument('--seed', type=int, help='Base random seed. (default: 0)')
    parser.add_argument('--eval-every', type=int, help='Offline evaluation period. (default: 1)')
    parser.add_argument('--workers', type=int, help='Repetitions run in parallel. (default: 1)')
    group = parser.add_argument_group('algorithm parameters')
    group.add_argument('--delta', type=float, help='Exploration step size. (default: 1.0)')
    group.add_argument('--alpha', type=float, help='Learning rate. (default: 0.1)')
    group.add_argument('--n', type=int, help='Directions sampled before preselection. (default: 4m)')
    group.add_argument('--m', type=int, help='Candidate rankers per query. (default: 4)')
    group.add_argument('--k-g', type=int, help='Discouraged gradients spanning the excluded space. (default: 25)')
    group.add_argument('--k-h', type=int, help='Historical queries used to break ties. (default: 10)')
    group.add_argument('--t-g', type=int, help='Capacity of the gradient queue. (default: 15)')
    group.add_argument('--t-h', type=int, help='Capacity of the query queue. (default: 50)')
    group.add_argument('--epsilon', type=float, help='Hybrid sampling threshold. (default: 0.1)')
    group.add_argument('--lag-k', type=int, help='Hybrid sampling lag in iterations. (default: 10)')
    group.add_argument('--display-length', type=int, help='Length of the displayed list. (default: 10)')
    group.add_argument('--tol', type=float, help='Relative null space tolerance. (default: 1e-10)')
    group.add_argument('--preselection', type=str, help='Context-dependent preselection on/off. (default: true)')
    group.add_argument('--tie-breaking', type=str, help='history or random. (default: history)')
    group.add_argument('--uniform-candidates', type=int,
                       help='NSGD candidates drawn from the whole space. (default: 0)')


def build_parser():
    parser = argparse.ArgumentParser(description='Online learning to rank simulations: null space gradient '
                                                 'descent and its dueling bandit baselines.')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    p = commands.add_parser('run', help='Run one configuration and write per-iteration metrics.')
    _add_common(p)
    _add_experiment(p)
    p.add_argument('--save-rankers', type=str, help='Directory for the final ranker of every repetition.')
    p.set_defaults(func=run)

    p = commands.add_parser('sweep', help='Run one configuration per value of a hyper-parameter.')
    _add_common(p)
    _add_experiment(p)
    p.add_argument('--parameter', type=str, required=True,
                   help='Options: {}'.format(', '.join(experiments.SWEEPABLE)))
    p.add_argument('--values', type=str, required=True, help='Comma separated values.')
    p.set_defaults(func=sweep)

    p = commands.add_parser('ratio', help='Selection ratio of null space versus uniform candidates.')
    _add_common(p)
    _add_experiment(p)
    p.add_argument('--null-space-count', type=int,
                   help='Null space candidates; all splits from m down to 0 if omitted.')
    p.add_argument('--uniform-count', type=int, help='Uniform candidates. (default: m - null space count)')
    p.set_defaults(func=ratio)

    p = commands.add_parser('gen-synthetic', help='Write a synthetic LETOR fold and its reference ranker.')
    _add_common(p)
    p.add_argument('--d', type=int, help='Feature dimension. (default: 20)')
    p.add_argument('--train-queries', type=int, help='(default: 50)')
    p.add_argument('--test-queries', type=int, help='(default: 20)')
    p.add_argument('--docs-per-query', type=int, help='(default: 10)')
    p.add_argument('--seed', type=int, help='(default: 0)')
    p.set_defaults(func=gen_synthetic)

    p = commands.add_parser('eval', help='Offline NDCG@10 of a saved ranker on the test queries.')
    _add_common(p)
    _add_dataset(p)
    p.add_argument('--ranker', type=str, required=True, help='Ranker file (one line of weights).')
    p.set_defaults(func=evaluate)
    return parser


def parse_args(parser, cl_args):
    """Parses `cl_args`; settings from --config fill in every flag that was
    not given on the command line."""
    args = parser.parse_args(cl_args)
    if args.config:
        for key, value in cli.load_config(args.config).items():
            if key in ('config', 'func', 'command') or not hasattr(args, key):
                raise ConfigurationError("{}: unknown setting {!r} for {}".format(args.config, key, args.command))
            if getattr(args, key) is None:
                setattr(args, key, value)
    return args


def main(cl_args):
    parser = build_parser()
    try:
        args = parse_args(parser, cl_args)
        cli.setup_logging(args.verbosity)
        if args.command == 'gen-synthetic':
            if not args.out:
                raise ConfigurationError("gen-synthetic needs --out DIR")
        args.func(args)
    except (OL2RError, OSError, ValueError) as e:
        sys.exit("error: {}".format(e))


if __name__ == '__main__':
    main(sys.argv[1:])
