#!/usr/bin/env python3

import numpy as np
import pytest

from src.lib.ol2r import Document, Ranker, aggregate_features, load_ranker, rank, save_ranker, score

from .helpers import make_query


def test_score_is_the_inner_product():
    assert score([1.0, -2.0], Document("d", (3.0, 0.5), 0)) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        score([1.0], Document("d", (3.0, 0.5), 0))


def test_rank_orders_by_descending_score_keeping_ties_in_document_order():
    query = make_query([[0.0, 1.0], [1.0, 0.0], [0.0, 1.0], [2.0, 0.0]], [0, 0, 0, 0])
    assert rank([0.0, 1.0], query).tolist() == [0, 2, 1, 3]
    assert rank([1.0, 0.0], query).tolist() == [3, 1, 0, 2]


def test_rank_of_zero_ranker_is_document_order():
    query = make_query(np.eye(4), [0, 1, 2, 0])
    assert rank(np.zeros(4), query).tolist() == [0, 1, 2, 3]


def test_rank_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        rank([1.0, 2.0, 3.0], make_query([[1.0, 0.0]], [1]))


def test_aggregate_features_sums_documents():
    query = make_query([[1.0, 2.0], [3.0, -1.0]], [0, 1])
    np.testing.assert_allclose(aggregate_features(query), [4.0, 1.0])


class TestRanker:
    def test_weights_are_read_only(self):
        ranker = Ranker([1.0, 2.0])
        with pytest.raises(ValueError):
            ranker.weights[0] = 5.0

    @pytest.mark.parametrize("weights", [[], [[1.0, 2.0]], [1.0, float("inf")]])
    def test_rejects_bad_weights(self, weights):
        with pytest.raises(ValueError):
            Ranker(weights)

    def test_text_form(self):
        ranker = Ranker([0.1, -2.5, 1e-300])
        assert Ranker.from_text(ranker.to_text()) == ranker
        with pytest.raises(ValueError):
            Ranker.from_text("1.0 abc")

    def test_save_and_load(self, tmp_path):
        path = str(tmp_path / "ranker.txt")
        save_ranker(np.array([0.25, -0.5]), path)
        assert load_ranker(path) == Ranker([0.25, -0.5])

    def test_methods_match_functions(self):
        query = make_query([[1.0, 0.0], [0.0, 3.0]], [1, 0])
        ranker = Ranker([1.0, 1.0])
        assert ranker.rank(query).tolist() == [1, 0]
        assert ranker.score(query.documents[1]) == 3.0


def test_rank_ignores_positive_scaling():
    rng = np.random.default_rng(0)
    for _ in range(200):
        query = make_query(rng.standard_normal((8, 5)), [0] * 8)
        w = rng.standard_normal(5)
        expected = rank(w, query).tolist()
        for exponent in (-3, 1, 6):
            assert rank(2.0 ** exponent * w, query).tolist() == expected


def test_score_is_linear_in_the_weights():
    rng = np.random.default_rng(1)
    doc = Document("d", tuple(rng.standard_normal(4)), 0)
    w1, w2 = rng.standard_normal(4), rng.standard_normal(4)
    assert score(2.5 * w1 - 0.5 * w2, doc) == pytest.approx(2.5 * score(w1, doc) - 0.5 * score(w2, doc))
