#!/usr/bin/env python3

## Experiment harness: runs learners over folds and repetitions and
## writes the per-iteration metrics as CSV.

from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass
import logging
import os

import numpy as np
from pyrsistent import PRecord, field

from ...lib.cli import confirm_overwrite, parse_key_values
from ...lib.ol2r import (AlgorithmConfig, ConfigurationError, CLICK_MODELS, Simulation,
                         get_click_model, load_folds, load_ranker, make_config, offline_ndcg,
                         save_ranker, synthetic_split, write_letor)
from ...lib.ol2r.dbgd import DBGD
from ...lib.ol2r.dp_dbgd import DualPointDBGD
from ...lib.ol2r.mgd import MGD
from ...lib.ol2r.nsgd import NSGD, NSGDWithoutPreselection, NSGDWithoutTieBreaking

logger = logging.getLogger(__name__)

RNG_SCHEMA = 1

learners = {cls.name: cls for cls in (DBGD, DualPointDBGD, MGD, NSGD,
                                      NSGDWithoutTieBreaking, NSGDWithoutPreselection)}

SWEEPABLE = {
    'm': int,
    'alpha': float,
    'k_g': int,
    'k_h': int,
    'n': int,
    'epsilon': float,
    'lag_k': int,
}

COLUMNS = ('algorithm', 'click_model', 'repetition', 'iteration',
           'offline_ndcg', 'cumulative_ndcg', 'cosine_sim')

SYNTHETIC_DEFAULTS = {'d': 20, 'train': 50, 'test': 20, 'docs': 10, 'seed': 0}


class ExperimentConfig(PRecord):
    algorithm = field(type=str, initial='nsgd',
                      invariant=lambda x: (x in learners, "unknown algorithm {!r}; choose from: {}".format(
                          x, ", ".join(learners))))
    dataset = field(type=str, initial='synthetic')
    click_model = field(type=str, initial='perfect',
                        invariant=lambda x: (x in CLICK_MODELS, "unknown click model {!r}; choose from: {}".format(
                            x, ", ".join(CLICK_MODELS))))
    iterations = field(type=int, initial=1000, invariant=lambda x: (x >= 0, "iterations cannot be negative"))
    repetitions = field(type=int, initial=1, invariant=lambda x: (x >= 1, "repetitions must be at least 1"))
    seed = field(type=int, initial=0, invariant=lambda x: (x >= 0, "seed cannot be negative"))
    reference = field(type=(str, type(None)), initial=None)
    dim = field(type=(int, type(None)), initial=None)
    eval_every = field(type=int, initial=1, invariant=lambda x: (x >= 1, "eval_every must be at least 1"))
    workers = field(type=int, initial=1, invariant=lambda x: (x >= 1, "workers must be at least 1"))
    params = field(type=AlgorithmConfig, initial=AlgorithmConfig())


@dataclass
class RunResult:
    """Traces of every repetition of one configuration.

    :param repetitions: Global repetition ids, in output order.
    :param traces: The Trace of each repetition.
    """
    config: ExperimentConfig
    repetitions: list
    traces: list

    def finals(self, metric):
        values = []
        for trace in self.traces:
            final = trace.final
            value = getattr(final, metric) if final is not None else None
            if value is not None:
                values.append(value)
        return values

    def summary(self):
        """Mean and sample standard deviation of each metric at the last
        iteration, over repetitions."""
        summary = {}
        for column, metric in (('offline_ndcg', 'offline_ndcg'),
                               ('cumulative_ndcg', 'cumulative_ndcg'),
                               ('cosine_sim', 'cosine_to_reference')):
            values = self.finals(metric)
            if values:
                std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
                summary[column] = (float(np.mean(values)), std)
        return summary

    def wins(self, source):
        return sum(trace.wins[source] for trace in self.traces)

    @property
    def iterations_run(self):
        return sum(len(trace.metrics) for trace in self.traces)


@dataclass
class RatioReport:
    null_space_count: int
    uniform_count: int
    null_space_ratio: float
    uniform_ratio: float
    online_score: float
    result: RunResult


def load_dataset(config):
    """Resolves the dataset setting into fold splits and the reference
    weights (None when unknown).

    `synthetic[:d=..,train=..,test=..,docs=..,seed=..]` draws a corpus;
    anything else is a LETOR fold directory or a root holding FoldN
    directories. A `reference.txt` next to the folds is used when no
    reference is configured.
    """
    reference = None
    if config.dataset == 'synthetic' or config.dataset.startswith('synthetic:'):
        sizes = dict(SYNTHETIC_DEFAULTS)
        if ':' in config.dataset:
            given = parse_key_values(config.dataset.split(':', 1)[1])
            unknown = set(given) - set(sizes)
            if unknown:
                raise ConfigurationError("unknown synthetic settings: {}".format(", ".join(sorted(unknown))))
            try:
                sizes.update({key: int(value) for key, value in given.items()})
            except ValueError:
                raise ConfigurationError("synthetic settings must be integers: {}".format(config.dataset))
        split, reference = synthetic_split(sizes["d"], sizes["train"], sizes["test"], sizes["docs"], sizes["seed"])
        splits = [split]
    else:
        if not os.path.isdir(config.dataset):
            raise FileNotFoundError("dataset directory {} does not exist".format(config.dataset))
        splits = load_folds(config.dataset, config.dim)
        default_reference = os.path.join(config.dataset, 'reference.txt')
        if config.reference is None and os.path.isfile(default_reference):
            logger.info("using reference ranker %s", default_reference)
            reference = load_ranker(default_reference).weights
    if config.reference is not None:
        reference = load_ranker(config.reference).weights
    if reference is not None and reference.shape[0] != splits[0].dim:
        raise ConfigurationError("reference ranker has {} weights but the data has {} features".format(
            reference.shape[0], splits[0].dim))
    return splits, reference


def make_learner(config):
    return learners[config.algorithm](config.params)


def run_experiment(config, data=None):
    """Runs `config.repetitions` repetitions on every fold.

    Repetition r of fold f has the global id f * repetitions + r and its
    own random stream seeded from (seed, id), so results do not depend on
    how many workers run them.

    :param data: Optional (splits, reference) to skip loading.
    """
    splits, reference = data if data is not None else load_dataset(config)
    learner = make_learner(config)
    click_model = get_click_model(config.click_model)
    jobs = [(f * config.repetitions + r, split)
            for f, split in enumerate(splits) for r in range(config.repetitions)]

    def run_one(job):
        repetition, split = job
        rng = np.random.default_rng([config.seed, repetition])
        simulation = Simulation(learner, split, click_model, config.iterations, reference,
                                eval_every=config.eval_every)
        trace = simulation.run(rng)
        final = trace.final
        logger.info("%s/%s repetition %d done%s", config.algorithm, config.click_model, repetition,
                    "" if final is None else ": offline %.4f, cumulative %.4f" % (
                        final.offline_ndcg, final.cumulative_ndcg))
        return trace

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        traces = list(pool.map(run_one, jobs))
    return RunResult(config, [job[0] for job in jobs], traces)


def sweep(config, parameter, values):
    """Runs one experiment per value of an NSGD hyper-parameter, all with
    the same seed and data."""
    if parameter not in SWEEPABLE:
        raise ConfigurationError("cannot sweep {!r}; choose from: {}".format(parameter, ", ".join(SWEEPABLE)))
    if not values:
        raise ConfigurationError("sweep needs at least one value")
    convert = SWEEPABLE[parameter]
    try:
        values = [convert(value) for value in values]
    except ValueError as e:
        raise ConfigurationError("bad value for {}: {}".format(parameter, e))
    data = load_dataset(config)
    results = []
    for value in values:
        params = make_config(AlgorithmConfig, **dict(config.params, **{parameter: value}))
        logger.info("sweep %s = %s", parameter, value)
        results.append((value, run_experiment(config.set(params=params), data)))
    return results


def selection_ratio_experiment(config, null_space_count, uniform_count=None):
    """Mixes null space and uniformly sampled candidates in NSGD and
    measures how often each kind beats the current ranker.

    Win frequencies are normalised by the number of candidates of that
    kind and by the number of iterations; a kind with no candidates has
    no ratio (None).
    """
    m = config.params.m
    if uniform_count is None:
        uniform_count = m - null_space_count
    if not 0 <= null_space_count <= m or uniform_count < 0 or null_space_count + uniform_count != m:
        raise ConfigurationError("null space ({}) and uniform ({}) candidates must add up to m = {}".format(
            null_space_count, uniform_count, m))
    if not issubclass(learners[config.algorithm], NSGD):
        logger.info("selection ratio runs NSGD, ignoring algorithm %s", config.algorithm)
        config = config.set(algorithm='nsgd')
    params = make_config(AlgorithmConfig, **dict(config.params, uniform_candidates=uniform_count))
    result = run_experiment(config.set(params=params))
    iterations = result.iterations_run

    def ratio(source, count):
        if not count or not iterations:
            return None
        return result.wins(source) / (iterations * count)

    online = result.finals('cumulative_ndcg')
    return RatioReport(null_space_count, uniform_count, ratio('null_space', null_space_count),
                       ratio('uniform', uniform_count), float(np.mean(online)) if online else None, result)


def evaluate_ranker(ranker, splits):
    """Offline NDCG@10 of a saved ranker on the test queries of each
    fold."""
    if ranker.dim != splits[0].dim:
        raise ConfigurationError("ranker has {} weights but the data has {} features".format(
            ranker.dim, splits[0].dim))
    return [(split.name, offline_ndcg(ranker.weights, split.test)) for split in splits]


def generate_synthetic(out_dir, d, n_train, n_test, docs_per_query, seed, force=False):
    """Writes a synthetic fold (train.txt, test.txt) and its reference
    ranker (reference.txt) to `out_dir`. Existing files are only replaced
    with `force`."""
    paths = [os.path.join(out_dir, name) for name in ('train.txt', 'test.txt', 'reference.txt')]
    for path in paths:
        confirm_overwrite(path, force)
    split, reference = synthetic_split(d, n_train, n_test, docs_per_query, seed)
    os.makedirs(out_dir, exist_ok=True)
    write_letor(split.train, paths[0])
    write_letor(split.test, paths[1])
    save_ranker(reference, paths[2])
    logger.info("wrote synthetic corpus to %s", out_dir)
    return split, reference


def save_rankers(result, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for repetition, trace in zip(result.repetitions, result.traces):
        save_ranker(trace.state.weights, os.path.join(out_dir, 'rep{}.txt'.format(repetition)))


def _fmt(value):
    return '' if value is None else '{:.6f}'.format(value)


def _writer(stream):
    return csv.writer(stream, lineterminator='\n')


def _rows(result):
    config = result.config
    for repetition, trace in zip(result.repetitions, result.traces):
        for metrics in trace.metrics:
            yield [config.algorithm, config.click_model, repetition, metrics.iteration,
                   _fmt(metrics.offline_ndcg), _fmt(metrics.cumulative_ndcg),
                   _fmt(metrics.cosine_to_reference)]


def write_csv(result, stream):
    """Writes the rows of a run sorted by (repetition, iteration),
    followed by `# summary` lines."""
    stream.write('# rng_schema={}\n'.format(RNG_SCHEMA))
    writer = _writer(stream)
    writer.writerow(COLUMNS)
    writer.writerows(_rows(result))
    for metric, (mean, std) in result.summary().items():
        stream.write('# summary,{},{},{}\n'.format(metric, _fmt(mean), _fmt(std)))


def write_sweep_csv(parameter, results, stream):
    stream.write('# rng_schema={}\n'.format(RNG_SCHEMA))
    writer = _writer(stream)
    writer.writerow(('parameter', 'value') + COLUMNS)
    for value, result in results:
        writer.writerows([parameter, value] + row for row in _rows(result))
    for value, result in results:
        for metric, (mean, std) in result.summary().items():
            stream.write('# summary,{},{},{},{},{}\n'.format(parameter, value, metric, _fmt(mean), _fmt(std)))


def write_ratio_csv(reports, stream):
    writer = _writer(stream)
    writer.writerow(('null_space_count', 'uniform_count', 'null_space_ratio', 'uniform_ratio', 'online_score'))
    for report in reports:
        writer.writerow([report.null_space_count, report.uniform_count, _fmt(report.null_space_ratio),
                         _fmt(report.uniform_ratio), _fmt(report.online_score)])
