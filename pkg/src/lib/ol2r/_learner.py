#!/usr/bin/env python3

## We will use persistent records for learner state: a step never
## changes the state it was given, it returns the next one.
from pyrsistent import PRecord, field, pdeque, InvariantException, PTypeError

from ._errors import ConfigurationError
from ._gradient import NULL_SPACE_TOL, sample_uniform_unit
from ._history import gradient_queue, query_queue
from ._interleaving import DISPLAY_LENGTH, attribute_credit, team_draft
from ._ranking import rank

__all__ = ["TIE_BREAKING", "AlgorithmConfig", "LearnerState", "Learner", "make_config"]

TIE_BREAKING = ("history", "random")


def _positive(name):
    return lambda x: (x > 0, "{} must be positive".format(name))


def _at_least(name, bound):
    return lambda x: (x >= bound, "{} must be at least {}".format(name, bound))


class AlgorithmConfig(PRecord):
    """Hyper-parameters shared by the learners.

    `n` is the number of directions sampled before preselection; None
    means 4m. `uniform_candidates` of the m NSGD candidates are drawn
    uniformly from the whole space instead of the null space.
    """
    delta = field(type=float, factory=float, initial=1.0, invariant=_positive("delta"))
    alpha = field(type=float, factory=float, initial=0.1, invariant=_positive("alpha"))
    n = field(type=(int, type(None)), initial=None,
              invariant=lambda x: (x is None or x >= 1, "n must be at least 1"))
    m = field(type=int, initial=4, invariant=_at_least("m", 1))
    k_g = field(type=int, initial=25, invariant=_at_least("k_g", 0))
    k_h = field(type=int, initial=10, invariant=_at_least("k_h", 0))
    t_g = field(type=int, initial=15, invariant=_at_least("t_g", 1))
    t_h = field(type=int, initial=50, invariant=_at_least("t_h", 1))
    epsilon = field(type=float, factory=float, initial=0.1,
                    invariant=lambda x: (0.0 < x < 1.0, "epsilon must lie in (0, 1)"))
    lag_k = field(type=int, initial=10, invariant=_at_least("lag_k", 1))
    display_length = field(type=int, initial=DISPLAY_LENGTH, invariant=_at_least("display_length", 1))
    tol = field(type=float, factory=float, initial=NULL_SPACE_TOL, invariant=_positive("tol"))
    preselection = field(type=bool, initial=True)
    tie_breaking = field(type=str, initial="history",
                         invariant=lambda x: (x in TIE_BREAKING, "tie_breaking must be one of {}".format(TIE_BREAKING)))
    uniform_candidates = field(type=int, initial=0, invariant=_at_least("uniform_candidates", 0))

    def __invariant__(self):
        if self.n is not None and self.n < self.m:
            return False, "n must be at least m"
        if self.uniform_candidates > self.m:
            return False, "uniform_candidates cannot exceed m"
        return True, None

    @property
    def candidate_pool(self):
        return self.n if self.n is not None else 4 * self.m


def make_config(record_type, **values):
    """Creates a config record, reporting bad values as
    ConfigurationError."""
    try:
        return record_type(**values)
    except (InvariantException, PTypeError, AttributeError, TypeError, ValueError) as e:
        raise ConfigurationError("invalid {}: {}".format(record_type.__name__, _describe(e)))


def _describe(error):
    if isinstance(error, InvariantException):
        return "; ".join(str(m) for m in error.invariant_errors + error.missing_fields)
    return str(error)


class LearnerState(PRecord):
    """The state of an online learner between two queries.

    Besides the current weights it carries the outcome of the latest
    iteration (the displayed list, its clicks and credits, the explored
    directions and the winning team) so a caller can inspect what
    happened.
    """
    weights = field(mandatory=True)
    iteration = field(type=int, initial=0)
    gradients = field(initial=pdeque())
    history = field(initial=pdeque())
    lagged = field(initial=pdeque())
    displayed = field(initial=None)
    clicks = field(initial=None)
    credits = field(initial=None)
    directions = field(initial=())
    sources = field(initial=())
    winner = field(type=int, initial=0)

    @property
    def winner_source(self):
        """Where the winning candidate's direction came from, or None when
        the current ranker was kept."""
        return self.sources[self.winner - 1] if self.winner else None


class Learner:
    """Base class of the online learners.

    :param AlgorithmConfig config: Hyper-parameters; defaults if None.
    """
    name = None

    def __init__(self, config=None):
        self.config = config if config is not None else AlgorithmConfig()

    def init_state(self, dim, rng):
        """Starts from a random unit weight vector with empty histories."""
        return LearnerState(
            weights=sample_uniform_unit(dim, rng),
            gradients=gradient_queue(self.config.t_g),
            history=query_queue(self.config.t_h),
            lagged=pdeque(maxlen=self.config.lag_k),
        )

    def step(self, state, query, click_model, rng):
        """Serves one query: proposes candidate rankers, shows the user an
        interleaved list, and returns the next LearnerState.

        :param LearnerState state: The state before the query.
        :param Query query: The query issued by the user.
        :param click_model: Anything with `simulate(grades, rng)`.
        :param numpy.random.Generator rng: The run's random source.
        """
        raise NotImplementedError

    def compare(self, rankers, query, click_model, rng):
        """Runs the interleaved comparison of `rankers` (team i is
        rankers[i]) on `query`.

        :returns: (displayed list, clicks, credits)
        """
        lists = [rank(w, query) for w in rankers]
        displayed = team_draft(lists, self.config.display_length, rng)
        clicks = click_model.simulate(query.grades[list(displayed.documents)], rng)
        credits = attribute_credit(displayed, clicks, len(rankers))
        return displayed, clicks, credits

    def advance(self, state, weights, **outcome):
        """The state after an iteration that ended with `weights`. The
        weights the iteration started from enter the lag window."""
        return state.update(dict(
            outcome,
            weights=weights,
            iteration=state.iteration + 1,
            lagged=state.lagged.append(state.weights),
        ))

    def __repr__(self):
        return "{}({})".format(type(self).__name__, dict(self.config))
