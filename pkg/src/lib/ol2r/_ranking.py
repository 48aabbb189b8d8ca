#!/usr/bin/env python3

## Linear rankers: scoring, ranked lists and persistence.

import numpy as np

__all__ = ["Ranker", "score", "rank", "aggregate_features", "save_ranker", "load_ranker"]


def _weights(ranker):
    return ranker.weights if isinstance(ranker, Ranker) else np.asarray(ranker, dtype=float)


def score(ranker, doc):
    """Returns the inner product of the ranker weights with the document
    features.

    :param ranker: A Ranker or a weight vector.
    :param Document doc: The document to score.
    :raises ValueError: If the dimensions differ.
    """
    weights = _weights(ranker)
    features = np.asarray(doc.features, dtype=float)
    if weights.shape != features.shape:
        raise ValueError("ranker has dimension {} but document has {}".format(
            weights.shape[0], features.shape[0]))
    return float(weights @ features)


def rank(ranker, query):
    """Ranks the documents of `query` by descending score.

    Ties keep the original document order.

    :returns: A permutation of the document indices as an int array.
    """
    weights = _weights(ranker)
    if weights.shape[0] != query.dim:
        raise ValueError("ranker has dimension {} but query has {}".format(weights.shape[0], query.dim))
    return np.argsort(-(query.feature_matrix @ weights), kind="stable")


def aggregate_features(query):
    """The elementwise sum of all candidate document features."""
    return query.feature_matrix.sum(axis=0)


class Ranker:
    """A linear ranking model: documents are ordered by the inner product
    of their features with `weights`.

    :param weights: Finite real vector of dimension d.
    """
    def __init__(self, weights):
        weights = np.array(weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise ValueError("ranker weights must be a non-empty vector")
        if not np.all(np.isfinite(weights)):
            raise ValueError("ranker weights must be finite")
        weights.setflags(write=False)
        self.weights = weights

    @property
    def dim(self):
        return self.weights.shape[0]

    def score(self, doc):
        return score(self, doc)

    def rank(self, query):
        return rank(self, query)

    def to_text(self):
        """One line of whitespace-separated decimals; `repr` keeps the
        values exact."""
        return " ".join(repr(float(w)) for w in self.weights)

    @classmethod
    def from_text(cls, text):
        tokens = text.split()
        try:
            return cls([float(token) for token in tokens])
        except ValueError:
            raise ValueError("ranker text must be whitespace-separated decimals")

    def __eq__(self, other):
        return isinstance(other, Ranker) and np.array_equal(self.weights, other.weights)

    def __repr__(self):
        return "Ranker({})".format(self.to_text())


def save_ranker(ranker, path):
    with open(path, "w") as stream:
        stream.write(Ranker(_weights(ranker)).to_text() + "\n")


def load_ranker(path):
    with open(path) as stream:
        return Ranker.from_text(stream.read())
