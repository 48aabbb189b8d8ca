#!/usr/bin/env python3

import numpy as np
import pytest

from src.lib.ol2r import (ConfigurationError, Document, FoldSplit, LetorParseError, QuerySet,
                          gen_synthetic, load_folds, parse_letor, serialize_letor, synthetic_split,
                          write_letor)

from .helpers import make_query

SAMPLE = """\
2 qid:10 1:0.5 2:1.0 #docid = a
0 qid:10 1:0.1 3:2.0 #docid = b
1 qid:7 2:0.3
"""


def test_parse_groups_by_qid_in_order_of_appearance():
    qs = parse_letor(SAMPLE)
    assert qs.dim == 3
    assert qs.qids == ["10", "7"]
    first, second = qs
    assert [d.doc_id for d in first.documents] == ["a", "b"]
    assert first.documents[1].features == (0.1, 0.0, 2.0)
    assert first.grades.tolist() == [2, 0]
    assert second.documents[0].doc_id == "7-0"
    assert second.documents[0].features == (0.0, 0.3, 0.0)


def test_parse_accepts_line_iterables_and_skips_blank_lines():
    qs = parse_letor(["", SAMPLE.splitlines()[0], "   "])
    assert len(qs) == 1
    assert len(qs[0]) == 1


def test_feature_matrix_is_read_only():
    query = parse_letor(SAMPLE)[0]
    with pytest.raises(ValueError):
        query.feature_matrix[0, 0] = 1.0


@pytest.mark.parametrize("line", [
    "3 qid:1 1:0.5",
    "x qid:1 1:0.5",
    "1 1:0.5",
    "1 qid: 1:0.5",
    "1 qid:1 1=0.5",
    "1 qid:1 0:0.5",
    "1 qid:1 1:nan",
])
def test_parse_errors_name_the_line(line):
    with pytest.raises(LetorParseError) as excinfo:
        parse_letor(SAMPLE + line)
    assert excinfo.value.line_number == 4
    assert str(excinfo.value).startswith("line 4:")


def test_parse_rejects_duplicate_docids():
    with pytest.raises(LetorParseError):
        parse_letor("1 qid:1 1:0.5 #docid = x\n0 qid:1 1:0.2 #docid = x\n")


def test_parse_rejects_empty_input():
    with pytest.raises(LetorParseError):
        parse_letor("")


def test_declared_dimension_pads_but_never_truncates():
    assert parse_letor(SAMPLE, dim=5)[1].documents[0].features == (0.0, 0.3, 0.0, 0.0, 0.0)
    with pytest.raises(ConfigurationError):
        parse_letor(SAMPLE, dim=2)


def test_serialized_corpus_parses_back_equal():
    corpus, _ = gen_synthetic(4, 3, 5, seed=3)
    assert parse_letor(serialize_letor(corpus)) == corpus


def test_document_rejects_bad_grades():
    with pytest.raises(ValueError):
        Document("d", (1.0,), 3)


def test_query_rejects_mixed_dimensions():
    with pytest.raises(ValueError):
        make_query([[1.0, 2.0], [1.0]], [0, 1])


def test_fold_split_rejects_shared_queries():
    q = make_query([[1.0], [2.0]], [0, 1])
    qs = QuerySet((q,), 1)
    with pytest.raises(ValueError):
        FoldSplit(qs, qs)


class TestSynthetic:
    def test_same_seed_same_corpus(self):
        a, ref_a = gen_synthetic(6, 4, 5, seed=11)
        b, ref_b = gen_synthetic(6, 4, 5, seed=11)
        assert a == b
        np.testing.assert_array_equal(ref_a, ref_b)

    def test_reference_is_a_unit_vector(self):
        _, reference = gen_synthetic(20, 2, 10, seed=0)
        assert np.linalg.norm(reference) == pytest.approx(1.0, abs=1e-12)

    def test_grades_follow_reference_terciles(self):
        corpus, reference = gen_synthetic(8, 5, 10, seed=2)
        for query in corpus:
            assert sorted(query.grades.tolist()) == [0, 0, 0, 1, 1, 1, 2, 2, 2, 2]
            scores = query.feature_matrix @ reference
            assert scores[query.grades == 2].min() > scores[query.grades == 1].max()
            assert scores[query.grades == 1].min() > scores[query.grades == 0].max()

    @pytest.mark.parametrize("args", [(1, 5, 5), (5, 0, 5), (5, 5, 2)])
    def test_bad_sizes(self, args):
        with pytest.raises(ConfigurationError):
            gen_synthetic(*args, seed=0)

    def test_split_keeps_queries_apart(self):
        split, _ = synthetic_split(5, 6, 4, 5, seed=0)
        assert len(split.train) == 6
        assert len(split.test) == 4
        assert not set(split.train.qids) & set(split.test.qids)


class TestFolds:
    def write_fold(self, directory, train, test):
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "train.txt").write_text(train)
        (directory / "test.txt").write_text(test)

    def test_fold_root_loads_in_fold_order(self, tmp_path):
        self.write_fold(tmp_path / "Fold2", "1 qid:1 1:1.0\n", "0 qid:2 1:0.5\n")
        self.write_fold(tmp_path / "Fold1", "1 qid:3 1:1.0\n", "0 qid:4 1:0.5\n")
        (tmp_path / "notes").mkdir()
        folds = load_folds(str(tmp_path))
        assert [f.name for f in folds] == ["Fold1", "Fold2"]
        assert folds[0].train.qids == ["3"]

    def test_train_and_test_share_a_dimension(self, tmp_path):
        self.write_fold(tmp_path, "1 qid:1 1:1.0 3:0.5\n", "0 qid:2 1:0.5\n")
        (split,) = load_folds(str(tmp_path))
        assert split.train.dim == split.test.dim == 3
        assert split.test[0].documents[0].features == (0.5, 0.0, 0.0)

    def test_written_corpus_loads_as_a_fold(self, tmp_path):
        split, _ = synthetic_split(3, 2, 2, 4, seed=5)
        write_letor(split.train, str(tmp_path / "train.txt"))
        write_letor(split.test, str(tmp_path / "test.txt"))
        (loaded,) = load_folds(str(tmp_path))
        assert loaded.train == split.train
        assert loaded.test == split.test

    def test_missing_folds(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_folds(str(tmp_path))
