#!/usr/bin/env python3

from ._gradient import sample_uniform_unit
from ._interleaving import infer_winners
from ._learner import Learner


class DualPointDBGD(Learner):
    """DBGD exploring a direction and its opposite at once: w + du and
    w - du are multileaved with the current ranker."""
    name = "dp-dbgd"

    def step(self, state, query, click_model, rng):
        w = state.weights
        u = sample_uniform_unit(w.shape[0], rng)
        delta = self.config.delta
        displayed, clicks, credits = self.compare([w, w + delta * u, w - delta * u], query, click_model, rng)
        winners = infer_winners(credits)
        winner = winners[0] if len(winners) == 1 else 0
        return self.advance(state, self.update(w, u, winners),
                            displayed=displayed, clicks=clicks, credits=credits,
                            directions=(u, -u), sources=("uniform", "uniform"), winner=winner)

    def update(self, weights, u, winners):
        """Moves towards the sole winning candidate; any tie keeps the
        current ranker."""
        if winners == (1,):
            return weights + self.config.alpha * u
        if winners == (2,):
            return weights - self.config.alpha * u
        return weights
