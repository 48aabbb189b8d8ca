#!/usr/bin/env python3

from ._gradient import sample_uniform_unit
from ._learner import Learner


class DBGD(Learner):
    """Dueling bandit gradient descent: one uniformly sampled direction is
    team-draft interleaved against the current ranker, and the ranker
    moves along it only if it collects strictly more clicks."""
    name = "dbgd"

    def step(self, state, query, click_model, rng):
        w = state.weights
        u = sample_uniform_unit(w.shape[0], rng)
        displayed, clicks, credits = self.compare([w, w + self.config.delta * u], query, click_model, rng)
        winner = 1 if credits[1] > credits[0] else 0
        return self.advance(state, self.update(w, u, credits),
                            displayed=displayed, clicks=clicks, credits=credits,
                            directions=(u,), sources=("uniform",), winner=winner)

    def update(self, weights, u, credits):
        if credits[1] > credits[0]:
            return weights + self.config.alpha * u
        return weights
