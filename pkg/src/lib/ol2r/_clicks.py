#!/usr/bin/env python3

## Cascade click model user simulation.

from dataclasses import dataclass

from ._errors import ConfigurationError

__all__ = ["ClickOutcome", "ClickModel", "PERFECT", "NAVIGATIONAL", "INFORMATIONAL", "CLICK_MODELS",
           "get_click_model", "simulate"]


@dataclass(frozen=True)
class ClickOutcome:
    """Clicked 1-based positions of a displayed list, ascending."""
    positions: tuple = ()

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def clicked_documents(self, interleaved):
        return [interleaved.documents[p - 1] for p in self.positions]


@dataclass(frozen=True)
class ClickModel:
    """A cascade user: scanning top-down, a document of grade g is clicked
    with probability click_prob[g]; after a click the user stops with
    probability stop_prob[g].
    """
    name: str
    click_prob: tuple
    stop_prob: tuple

    def __post_init__(self):
        for probs in (self.click_prob, self.stop_prob):
            if len(probs) != 3 or not all(0.0 <= p <= 1.0 for p in probs):
                raise ValueError("{} needs three probabilities in [0, 1] per table".format(self.name))

    def simulate(self, grades, rng):
        return simulate(grades, self, rng)


PERFECT = ClickModel("perfect", (0.0, 0.5, 1.0), (0.0, 0.0, 0.0))
NAVIGATIONAL = ClickModel("navigational", (0.05, 0.5, 0.95), (0.2, 0.5, 0.9))
INFORMATIONAL = ClickModel("informational", (0.4, 0.7, 0.9), (0.1, 0.3, 0.5))

CLICK_MODELS = {model.name: model for model in (PERFECT, NAVIGATIONAL, INFORMATIONAL)}


def get_click_model(name):
    try:
        return CLICK_MODELS[name]
    except KeyError:
        raise ConfigurationError("unknown click model {!r}; choose from: {}".format(
            name, ", ".join(CLICK_MODELS)))


def simulate(grades, model, rng):
    """Simulates one user scanning a displayed list.

    Per position the click draw comes first, then the stop draw if the
    document was clicked; nothing is drawn after the user stops.

    :param grades: Relevance grades of the displayed documents in order.
    :param ClickModel model: The user configuration.
    :param numpy.random.Generator rng: Random source.
    """
    clicked = []
    for position, grade in enumerate(grades, start=1):
        if grade not in (0, 1, 2):
            raise ValueError("relevance grade {} outside 0..2".format(grade))
        if rng.random() < model.click_prob[grade]:
            clicked.append(position)
            if rng.random() < model.stop_prob[grade]:
                break
    return ClickOutcome(tuple(clicked))
