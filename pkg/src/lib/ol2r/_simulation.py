#!/usr/bin/env python3

from collections import Counter
from dataclasses import dataclass, field
import logging

from ._metrics import MetricConfig, IterationMetrics, cosine_similarity, ndcg_at_k, offline_ndcg

__all__ = ["Simulation", "Trace", "sample_query_index"]

logger = logging.getLogger(__name__)


def sample_query_index(rng, n_queries):
    """Draws the next training query uniformly, with replacement."""
    return int(rng.integers(n_queries))


@dataclass
class Trace:
    """Everything one simulated run produced."""
    metrics: list = field(default_factory=list)
    state: object = None
    wins: Counter = field(default_factory=Counter)

    @property
    def final(self):
        return self.metrics[-1] if self.metrics else None


class Simulation:
    """Runs a learner against simulated users on a fold.

    Every iteration samples a training query, lets the learner serve it,
    and then records the NDCG of the list the user saw, its discounted
    running sum, the offline NDCG of the updated ranker on the test
    queries and its cosine similarity to the reference weights.

    :param Learner learner: The online learner.
    :param FoldSplit split: Train queries for the stream, test queries
        for offline evaluation.
    :param click_model: The simulated user.
    :param int iterations: Number of queries T.
    :param reference: Optional reference weight vector.
    :param MetricConfig metric_config: Cutoff and discount.
    :param int eval_every: Offline evaluation period; in between the last
        value is carried forward. The first and last iteration are always
        evaluated.
    """
    def __init__(self, learner, split, click_model, iterations, reference=None,
                 metric_config=None, eval_every=1):
        if iterations < 0:
            raise ValueError("iterations cannot be negative")
        if eval_every < 1:
            raise ValueError("eval_every must be at least 1")
        self.learner = learner
        self.split = split
        self.click_model = click_model
        self.iterations = iterations
        self.reference = reference
        self.metric_config = metric_config or MetricConfig()
        self.eval_every = eval_every

    def run(self, rng):
        k = self.metric_config.cutoff_k
        gamma = self.metric_config.discount_gamma
        train, test = self.split.train, self.split.test
        state = self.learner.init_state(self.split.dim, rng)
        trace = Trace(state=state)
        cumulative = 0.0
        offline = None
        for t in range(1, self.iterations + 1):
            query = train[sample_query_index(rng, len(train))]
            state = self.learner.step(state, query, self.click_model, rng)
            online = ndcg_at_k(query.grades[list(state.displayed.documents)], query.grades, k)
            cumulative += gamma ** (t - 1) * online
            if offline is None or (t - 1) % self.eval_every == 0 or t == self.iterations:
                offline = offline_ndcg(state.weights, test, k)
            if state.winner:
                trace.wins[state.winner_source] += 1
            trace.metrics.append(IterationMetrics(t, offline, online, cumulative, self._cosine(state.weights)))
            logger.debug("iteration %d: query %s, winner %d, online %.4f, offline %.4f",
                         t, query.qid, state.winner, online, offline)
        trace.state = state
        return trace

    def _cosine(self, weights):
        if self.reference is None:
            return None
        try:
            return cosine_similarity(weights, self.reference)
        except ValueError:
            return None
