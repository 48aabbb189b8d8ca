#!/usr/bin/env python3

import logging

import numpy as np

from ._errors import FullRankExhausted
from ._gradient import (null_space, preselect, sample_in_subspace, sample_uniform_unit,
                        select_mode, worst_gradients)
from ._history import QueryRecord, record_gradients
from ._interleaving import infer_winners
from ._learner import Learner, make_config
from ._metrics import CUTOFF_K, eval_clicked
from ._ranking import aggregate_features, rank

logger = logging.getLogger(__name__)


def tie_break(winners, rankers, history, k_h, k=CUTOFF_K):
    """Picks one of several tied rankers using the most difficult recent
    queries.

    The k_h records whose displayed list scored lowest against its own
    clicks are re-ranked by every tied ranker; the ranker with the
    highest summed click-based NDCG wins. Remaining ties go to the
    current ranker (0) if it is among them, else to the smallest index.

    :param winners: Tied team indices (at least two).
    :param rankers: Weight vectors, indexed by team.
    :param history: QueryRecords, oldest first.
    """
    if len(winners) < 2:
        raise ValueError("tie breaking needs at least two winners")
    records = list(history)
    qualities = [record.displayed_quality(k) for record in records]
    # hardest first; equally hard records prefer the newer one
    order = sorted(range(len(records)), key=lambda i: (qualities[i], -i))
    selected = [records[i] for i in order[:k_h]]
    totals = {o: sum(eval_clicked(rank(rankers[o], r.query), r.clicked_documents, k) for r in selected)
              for o in winners}
    best = max(totals.values())
    tied = [o for o in winners if np.isclose(totals[o], best, rtol=0.0, atol=1e-12)]
    return 0 if 0 in tied else min(tied)


class NSGD(Learner):
    """Null space gradient descent.

    Candidate directions are sampled from the null space of the recent
    directions that lost to the current ranker, preselected by how well
    the current query can tell them apart, and compared by team-draft
    multileaving. Ties are resolved on difficult historical queries.
    """
    name = "nsgd"

    def propose(self, state, query, rng):
        """Samples the m candidate directions for `query`.

        :returns: (directions, sources) where sources tells for every
            direction whether it came from the null space or was uniform.
        """
        cfg = self.config
        w = state.weights
        d = w.shape[0]
        directions = []
        from_null_space = cfg.m - cfg.uniform_candidates
        if from_null_space:
            G = worst_gradients(state.gradients, cfg.k_g, d)
            lagged = state.lagged.left if len(state.lagged) == cfg.lag_k else None
            mode = select_mode(w, lagged, cfg.epsilon)
            try:
                basis = null_space(G, cfg.tol)
                sample = lambda: sample_in_subspace(basis, mode, rng)
            except FullRankExhausted:
                logger.debug("iteration %d: %d gradients span R^%d, sampling uniformly",
                             state.iteration + 1, G.shape[0], d)
                sample = lambda: sample_uniform_unit(d, rng)
            if cfg.preselection:
                pool = max(from_null_space, cfg.candidate_pool * from_null_space // cfg.m)
                candidates = np.array([sample() for _ in range(pool)])
                directions.extend(preselect(candidates, aggregate_features(query), from_null_space))
            else:
                directions.extend(sample() for _ in range(from_null_space))
        directions.extend(sample_uniform_unit(d, rng) for _ in range(cfg.uniform_candidates))
        sources = ("null_space",) * from_null_space + ("uniform",) * cfg.uniform_candidates
        return tuple(directions), sources

    def step(self, state, query, click_model, rng):
        cfg = self.config
        w = state.weights
        directions, sources = self.propose(state, query, rng)
        rankers = [w] + [w + cfg.delta * g for g in directions]
        displayed, clicks, credits = self.compare(rankers, query, click_model, rng)
        winner = self.choose_winner(infer_winners(credits), rankers, state.history, rng)
        weights = w if winner == 0 else w + cfg.alpha * directions[winner - 1]
        return self.advance(
            state, weights,
            displayed=displayed, clicks=clicks, credits=credits,
            directions=directions, sources=sources, winner=winner,
            gradients=record_gradients(state.gradients, directions, credits),
            history=state.history.append(QueryRecord(query=query, displayed=displayed, clicks=clicks)),
        )

    def choose_winner(self, winners, rankers, history, rng):
        if len(winners) == 1:
            return winners[0]
        if self.config.tie_breaking == "history":
            return tie_break(winners, rankers, history, self.config.k_h, CUTOFF_K)
        return int(rng.choice(winners))


class NSGDWithoutTieBreaking(NSGD):
    """NSGD with tied winners picked at random."""
    name = "nsgd-no-tb"

    def __init__(self, config=None):
        super().__init__(config)
        self.config = make_config(type(self.config), **dict(self.config, tie_breaking="random"))


class NSGDWithoutPreselection(NSGD):
    """NSGD with neither preselection nor tie breaking: m directions are
    taken straight from the null space and ties are random."""
    name = "nsgd-no-cdp-tb"

    def __init__(self, config=None):
        super().__init__(config)
        self.config = make_config(type(self.config), **dict(self.config, tie_breaking="random",
                                                             preselection=False))
