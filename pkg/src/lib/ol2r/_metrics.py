#!/usr/bin/env python3

## Ranking quality: NDCG@k, discounted cumulative NDCG, click-based
## NDCG and cosine similarity to a reference ranker.

from dataclasses import dataclass

import numpy as np

from ._ranking import rank

__all__ = ["CUTOFF_K", "DISCOUNT_GAMMA", "MetricConfig", "IterationMetrics", "dcg_at_k", "ndcg_at_k",
           "cumulative_ndcg", "eval_clicked", "cosine_similarity", "query_ndcg", "offline_ndcg"]

CUTOFF_K = 10
DISCOUNT_GAMMA = 0.995


@dataclass(frozen=True)
class MetricConfig:
    cutoff_k: int = CUTOFF_K
    discount_gamma: float = DISCOUNT_GAMMA

    def __post_init__(self):
        if self.cutoff_k < 1:
            raise ValueError("cutoff_k must be at least 1")
        if not 0.0 < self.discount_gamma <= 1.0:
            raise ValueError("discount_gamma must lie in (0, 1]")


@dataclass(frozen=True)
class IterationMetrics:
    """What is recorded after every iteration of a run.

    :param float cosine_to_reference: None when no reference ranker is
        known or the weights are zero.
    """
    iteration: int
    offline_ndcg: float
    online_ndcg: float
    cumulative_ndcg: float
    cosine_to_reference: float = None


def dcg_at_k(grades, k):
    grades = np.asarray(grades, dtype=float)[:k]
    if grades.size == 0:
        return 0.0
    discounts = np.log2(np.arange(2, grades.size + 2))
    return float(np.sum((2.0 ** grades - 1.0) / discounts))


def ndcg_at_k(ranked_grades, all_grades, k=CUTOFF_K):
    """NDCG@k with gain 2^g - 1 and discount log2(i + 1).

    The ideal ordering sorts `all_grades` descending. Queries without any
    relevant document score 0.
    """
    ideal = dcg_at_k(np.sort(np.asarray(all_grades))[::-1], k)
    if ideal == 0.0:
        return 0.0
    return dcg_at_k(ranked_grades, k) / ideal


def cumulative_ndcg(per_iteration_ndcg, gamma=DISCOUNT_GAMMA):
    """Sum of gamma^(t-1) * ndcg_t over the iterations."""
    values = np.asarray(per_iteration_ndcg, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.sum(values * gamma ** np.arange(values.size)))


def eval_clicked(ranked_docs, clicked_docs, k=CUTOFF_K):
    """NDCG@k of a ranking with the clicked documents as the only relevant
    ones (binary gain).

    Documents are matched by identity, so a re-ranking of a historical
    query can be scored against the clicks it received back then.

    :param ranked_docs: Document identifiers in ranked order.
    :param clicked_docs: Identifiers of the clicked documents.
    """
    clicked = set(clicked_docs)
    if not clicked:
        return 0.0
    relevance = [1 if doc in clicked else 0 for doc in list(ranked_docs)[:k]]
    return ndcg_at_k(relevance, [1] * len(clicked), k)


def cosine_similarity(w1, w2):
    """Cosine of the angle between two weight vectors.

    :raises ValueError: If either vector is zero.
    """
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    if w1.shape != w2.shape:
        raise ValueError("vectors have different dimensions")
    n1, n2 = np.linalg.norm(w1), np.linalg.norm(w2)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    return float(np.clip(w1 @ w2 / (n1 * n2), -1.0, 1.0))


def query_ndcg(weights, query, k=CUTOFF_K):
    return ndcg_at_k(query.grades[rank(weights, query)], query.grades, k)


def offline_ndcg(weights, query_set, k=CUTOFF_K):
    """Mean NDCG@k of the ranker over every query of the set, summed in
    query order."""
    return float(np.mean([query_ndcg(weights, query, k) for query in query_set]))
