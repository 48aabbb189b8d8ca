#!/usr/bin/env python3

## Fixed-capacity histories kept by the learners. Queues are persistent
## deques: appending to a full queue returns a new queue without its
## oldest entry and leaves the old one untouched.

from pyrsistent import PRecord, field, pdeque

from ._metrics import eval_clicked

__all__ = ["GradientRecord", "QueryRecord", "gradient_queue", "query_queue", "record_gradients"]


class GradientRecord(PRecord):
    """An explored direction together with its click credit margin over
    the current ranker. Only discouraged (negative) margins are kept."""
    direction = field(mandatory=True)
    quality = field(type=int, mandatory=True,
                    invariant=lambda q: (q < 0, "only negative qualities are recorded"))


class QueryRecord(PRecord):
    """A served query, the list it was shown and the clicks it got."""
    query = field(mandatory=True)
    displayed = field(mandatory=True)
    clicks = field(mandatory=True)

    @property
    def clicked_documents(self):
        return self.clicks.clicked_documents(self.displayed)

    def displayed_quality(self, k=10):
        """Click-based NDCG of the list that was actually shown."""
        return eval_clicked(self.displayed.documents, self.clicked_documents, k)


def gradient_queue(capacity):
    if capacity < 1:
        raise ValueError("queue capacity must be at least 1")
    return pdeque(maxlen=capacity)


def query_queue(capacity):
    if capacity < 1:
        raise ValueError("queue capacity must be at least 1")
    return pdeque(maxlen=capacity)


def record_gradients(queue, directions, credits):
    """Appends every candidate that lost to the current ranker.

    :param directions: The m candidate directions; candidate i is team i + 1.
    :param credits: Click credits of all m + 1 teams, current ranker first.
    """
    for i, direction in enumerate(directions, start=1):
        quality = int(credits[i] - credits[0])
        if quality < 0:
            queue = queue.append(GradientRecord(direction=direction, quality=quality))
    return queue
