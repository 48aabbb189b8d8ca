#!/usr/bin/env python3

from itertools import permutations
import math

import numpy as np
import pytest

from src.lib.ol2r import (MetricConfig, cosine_similarity, cumulative_ndcg, dcg_at_k, eval_clicked,
                          gen_synthetic, ndcg_at_k, offline_ndcg, query_ndcg)

from .helpers import make_query, make_query_set


def brute_force_ndcg(ranked, k):
    def dcg(grades):
        return sum((2 ** g - 1) / math.log2(i + 2) for i, g in enumerate(grades[:k]))
    ideal = max(dcg(list(p)) for p in permutations(ranked))
    return dcg(list(ranked)) / ideal if ideal > 0 else 0.0


def test_ndcg_matches_permutation_oracle():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        ranked = rng.integers(0, 3, size=int(rng.integers(1, 7))).tolist()
        k = int(rng.integers(1, 8))
        assert abs(ndcg_at_k(ranked, ranked, k) - brute_force_ndcg(ranked, k)) <= 1e-9


def test_ndcg_examples():
    assert ndcg_at_k([2, 1, 0], [2, 1, 0]) == 1.0
    assert ndcg_at_k([0, 2], [0, 2]) == pytest.approx(1.0 / math.log2(3))
    assert ndcg_at_k([0, 0, 0], [0, 0, 0]) == 0.0


def test_ndcg_cutoff_uses_the_whole_query_for_the_ideal():
    # the relevant document is ranked below the cutoff
    assert ndcg_at_k([0, 0], [0, 0, 2], k=2) == 0.0
    assert ndcg_at_k([2, 0], [0, 0, 2], k=1) == 1.0


def test_dcg():
    assert dcg_at_k([], 10) == 0.0
    assert dcg_at_k([2, 1], 10) == pytest.approx(3.0 + 1.0 / math.log2(3))


def test_cumulative_ndcg_of_a_constant_sequence():
    expected = (1 - 0.995 ** 1000) / 0.005
    assert abs(cumulative_ndcg([1.0] * 1000, 0.995) - expected) <= 1e-6
    assert cumulative_ndcg([0.345] * 1000) == pytest.approx(0.345 * expected)
    assert cumulative_ndcg([]) == 0.0


def test_cumulative_ndcg_weights_early_iterations_more():
    assert cumulative_ndcg([1.0, 0.0], 0.5) == 1.0
    assert cumulative_ndcg([0.0, 1.0], 0.5) == 0.5


def test_eval_clicked():
    assert eval_clicked(["a", "b"], ["a"]) == 1.0
    assert eval_clicked(["b", "a"], ["a"]) == pytest.approx(1.0 / math.log2(3))
    assert eval_clicked(["a", "b"], []) == 0.0
    assert eval_clicked(["a", "b", "c"], ["a", "b"]) == pytest.approx(1.0)


class TestCosine:
    def test_values(self):
        assert cosine_similarity([1.0, 0.0], [2.0, 0.0]) == pytest.approx(1.0)
        assert cosine_similarity([1.0, 0.0], [-3.0, 0.0]) == pytest.approx(-1.0)
        assert cosine_similarity([1.0, 0.0], [0.0, 0.5]) == pytest.approx(0.0)

    def test_stays_in_range(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            w = rng.standard_normal(5)
            assert -1.0 <= cosine_similarity(w, 3.0 * w) <= 1.0

    @pytest.mark.parametrize("w1, w2", [([0.0, 0.0], [1.0, 0.0]), ([1.0], [1.0, 0.0])])
    def test_undefined(self, w1, w2):
        with pytest.raises(ValueError):
            cosine_similarity(w1, w2)


def test_offline_ndcg_is_the_mean_over_queries():
    perfect = make_query([[2.0], [1.0], [0.0]], [2, 1, 0], qid="1")
    reversed_ = make_query([[0.0], [1.0], [2.0]], [2, 1, 0], qid="2")
    queries = make_query_set(perfect, reversed_)
    assert query_ndcg([1.0], perfect) == 1.0
    expected = (1.0 + query_ndcg([1.0], reversed_)) / 2
    assert offline_ndcg([1.0], queries) == pytest.approx(expected)
    assert offline_ndcg([1.0], queries) < 1.0


def test_metric_config_validation():
    assert MetricConfig().cutoff_k == 10
    with pytest.raises(ValueError):
        MetricConfig(cutoff_k=0)
    with pytest.raises(ValueError):
        MetricConfig(discount_gamma=1.5)


def test_irrelevant_documents_beyond_the_cutoff_change_nothing():
    rng = np.random.default_rng(1)
    for _ in range(500):
        ranked = rng.integers(0, 3, size=int(rng.integers(1, 12))).tolist()
        k = int(rng.integers(1, 11))
        padded = ranked + [0] * 5
        assert ndcg_at_k(padded, padded, k) == pytest.approx(ndcg_at_k(ranked, ranked, k), abs=1e-12)


def test_reference_ranker_is_ideal_on_synthetic_data():
    corpus, reference = gen_synthetic(20, 30, 10, seed=4)
    assert offline_ndcg(reference, corpus) == pytest.approx(1.0)
    assert all(query_ndcg(reference, query) == pytest.approx(1.0) for query in corpus)
