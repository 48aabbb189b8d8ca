#!/usr/bin/env python3

import numpy as np

from ._gradient import sample_uniform_unit
from ._interleaving import infer_winners
from ._learner import Learner


class MGD(Learner):
    """Multileave gradient descent: m uniformly sampled directions are
    multileaved with the current ranker and the ranker moves towards the
    mean of the winning directions."""
    name = "mgd"

    def step(self, state, query, click_model, rng):
        w = state.weights
        cfg = self.config
        directions = [sample_uniform_unit(w.shape[0], rng) for _ in range(cfg.m)]
        rankers = [w] + [w + cfg.delta * u for u in directions]
        displayed, clicks, credits = self.compare(rankers, query, click_model, rng)
        winners = infer_winners(credits)
        moved = [j for j in winners if j != 0]
        return self.advance(state, self.update(w, directions, winners),
                            displayed=displayed, clicks=clicks, credits=credits,
                            directions=tuple(directions), sources=("uniform",) * cfg.m,
                            winner=moved[0] if len(moved) == 1 else 0)

    def update(self, weights, directions, winners):
        """The current ranker only counts as a winner when nothing else
        won; otherwise it is left out of the mean."""
        moved = [j for j in winners if j != 0]
        if not moved:
            return weights
        return weights + self.config.alpha * np.mean([directions[j - 1] for j in moved], axis=0)
