#!/usr/bin/env python3

## Ranking corpora: LETOR ingestion, fold splits and synthetic data
## with a known optimal linear ranker.

from dataclasses import dataclass
from functools import cached_property
import logging
import math
import os
import re

import numpy as np

from ._errors import ConfigurationError, LetorParseError

__all__ = ["GRADES", "Document", "Query", "QuerySet", "FoldSplit", "parse_letor", "serialize_letor",
           "load_letor", "write_letor", "is_fold_directory", "load_fold", "load_folds",
           "gen_synthetic", "synthetic_split"]

logger = logging.getLogger(__name__)

GRADES = (0, 1, 2)

_DOCID = re.compile(r"docid\s*=\s*(\S+)")


@dataclass(frozen=True)
class Document:
    """A single query-document pair.

    :param str doc_id: Identifier of the document within its query.
    :param tuple features: The d ranking features as floats.
    :param int relevance: The relevance grade, one of 0, 1 or 2.
    """
    doc_id: str
    features: tuple
    relevance: int

    def __post_init__(self):
        if self.relevance not in GRADES:
            raise ValueError("relevance must be one of {}, got {}".format(GRADES, self.relevance))

    @property
    def dim(self):
        return len(self.features)


@dataclass(frozen=True)
class Query:
    """A query and its candidate documents, in file order.

    The feature matrix and grades are computed once and cached; the
    record itself never changes after construction.
    """
    qid: str
    documents: tuple

    def __post_init__(self):
        if not self.documents:
            raise ValueError("query {} has no documents".format(self.qid))
        dims = {doc.dim for doc in self.documents}
        if len(dims) != 1:
            raise ValueError("query {} mixes feature dimensions {}".format(self.qid, sorted(dims)))
        ids = [doc.doc_id for doc in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("query {} has duplicate document ids".format(self.qid))

    def __len__(self):
        return len(self.documents)

    @property
    def dim(self):
        return self.documents[0].dim

    @cached_property
    def feature_matrix(self):
        """The s x d matrix of document features (read-only)."""
        matrix = np.array([doc.features for doc in self.documents], dtype=float)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def grades(self):
        grades = np.array([doc.relevance for doc in self.documents], dtype=int)
        grades.setflags(write=False)
        return grades

    def padded(self, dim):
        if dim == self.dim:
            return self
        pad = (0.0,) * (dim - self.dim)
        return Query(self.qid, tuple(Document(d.doc_id, d.features + pad, d.relevance)
                                     for d in self.documents))


@dataclass(frozen=True)
class QuerySet:
    queries: tuple
    dim: int

    def __post_init__(self):
        if not self.queries:
            raise ValueError("a query set needs at least one query")
        for query in self.queries:
            if query.dim != self.dim:
                raise ValueError("query {} has dimension {}, expected {}".format(
                    query.qid, query.dim, self.dim))

    def __len__(self):
        return len(self.queries)

    def __iter__(self):
        return iter(self.queries)

    def __getitem__(self, index):
        return self.queries[index]

    @property
    def qids(self):
        return [q.qid for q in self.queries]

    def padded(self, dim):
        """Returns the query set with every feature vector zero-padded to
        `dim` entries."""
        if dim < self.dim:
            raise ValueError("cannot shrink dimension {} to {}".format(self.dim, dim))
        return QuerySet(tuple(q.padded(dim) for q in self.queries), dim)


@dataclass(frozen=True)
class FoldSplit:
    """Train queries feed the online stream, test queries the offline
    evaluation."""
    train: QuerySet
    test: QuerySet
    name: str = ""

    def __post_init__(self):
        overlap = set(self.train.qids) & set(self.test.qids)
        if overlap:
            raise ValueError("train and test share queries: {}".format(sorted(overlap)[:5]))
        if self.train.dim != self.test.dim:
            raise ValueError("train and test dimensions differ ({} vs {})".format(
                self.train.dim, self.test.dim))

    @property
    def dim(self):
        return self.train.dim


def _parse_record(line, line_number):
    body, _, comment = line.partition('#')
    parts = body.split()
    if not parts:
        return None
    try:
        grade = int(parts[0])
    except ValueError:
        raise LetorParseError("non-numeric relevance grade {!r}".format(parts[0]), line_number)
    if grade not in GRADES:
        raise LetorParseError("relevance grade {} outside {}".format(grade, GRADES), line_number)
    if len(parts) < 2 or not parts[1].startswith("qid:") or len(parts[1]) == 4:
        raise LetorParseError("expected 'qid:<id>' after the grade", line_number)
    qid = parts[1][4:]
    features = {}
    for token in parts[2:]:
        fid, sep, value = token.partition(':')
        try:
            fid = int(fid)
            value = float(value)
        except ValueError:
            raise LetorParseError("malformed feature {!r}".format(token), line_number)
        if not sep or fid < 1:
            raise LetorParseError("malformed feature {!r}".format(token), line_number)
        if not math.isfinite(value):
            raise LetorParseError("non-finite feature value {!r}".format(token), line_number)
        features[fid] = value
    match = _DOCID.search(comment)
    doc_id = match.group(1) if match else None
    return grade, qid, features, doc_id


def parse_letor(text_stream, dim=None):
    """Parses LETOR records (`<grade> qid:<q> <fid>:<val> ... #<comment>`)
    into a QuerySet.

    Documents are grouped by qid in order of first appearance. The
    dimension is the largest feature id seen; missing ids read as 0.0.

    :param text_stream: An iterable of lines (an open file, a list of
        strings) or a single string.
    :param int dim: Optional declared dimension. It must be at least the
        inferred one; shorter vectors are zero-padded up to it.
    :raises LetorParseError: On a malformed record or an empty stream.
    """
    if isinstance(text_stream, str):
        text_stream = text_stream.splitlines()
    grouped = {}
    max_fid = 0
    for line_number, line in enumerate(text_stream, start=1):
        record = _parse_record(line, line_number)
        if record is None:
            continue
        grade, qid, features, doc_id = record
        if features:
            max_fid = max(max_fid, max(features))
        grouped.setdefault(qid, []).append((grade, features, doc_id, line_number))
    if not grouped:
        raise LetorParseError("no LETOR records found")
    if max_fid == 0:
        raise LetorParseError("records carry no features")
    if dim is not None:
        if dim < max_fid:
            raise ConfigurationError(
                "declared dimension {} is smaller than the {} features in the data".format(dim, max_fid))
        max_fid = dim

    queries = []
    for qid, records in grouped.items():
        documents = []
        seen = set()
        for index, (grade, features, doc_id, line_number) in enumerate(records):
            if doc_id is None:
                doc_id = "{}-{}".format(qid, index)
            if doc_id in seen:
                raise LetorParseError("duplicate docid {} in qid {}".format(doc_id, qid), line_number)
            seen.add(doc_id)
            vector = tuple(features.get(fid, 0.0) for fid in range(1, max_fid + 1))
            documents.append(Document(doc_id, vector, grade))
        queries.append(Query(qid, tuple(documents)))
    return QuerySet(tuple(queries), max_fid)


def serialize_letor(query_set):
    """Renders a QuerySet in the LETOR text format. Values are written
    with `repr` so that parsing the output gives back an equal set."""
    lines = []
    for query in query_set:
        for doc in query.documents:
            features = " ".join("{}:{!r}".format(fid, value)
                                for fid, value in enumerate(doc.features, start=1))
            lines.append("{} qid:{} {} #docid = {}".format(doc.relevance, query.qid, features, doc.doc_id))
    return "\n".join(lines) + "\n"


def load_letor(path, dim=None):
    with open(path) as stream:
        return parse_letor(stream, dim)


def write_letor(query_set, path):
    with open(path, "w") as stream:
        stream.write(serialize_letor(query_set))


_TRAIN_FILES = ("train.txt", "trainingset.txt")
_TEST_FILES = ("test.txt", "testset.txt")


def _find(directory, names):
    for name in names:
        path = os.path.join(directory, name)
        if os.path.isfile(path):
            return path
    raise FileNotFoundError("none of {} found in {}".format(", ".join(names), directory))


def is_fold_directory(directory):
    return any(os.path.isfile(os.path.join(directory, name)) for name in _TRAIN_FILES)


def load_fold(directory, dim=None):
    """Loads the train and test files of one LETOR fold. Both sets are
    padded to a common dimension."""
    train = load_letor(_find(directory, _TRAIN_FILES), dim)
    test = load_letor(_find(directory, _TEST_FILES), dim)
    common = max(train.dim, test.dim)
    logger.info("loaded fold %s: %d train / %d test queries, %d features",
                directory, len(train), len(test), common)
    return FoldSplit(train.padded(common), test.padded(common), os.path.basename(os.path.normpath(directory)))


def load_folds(root, dim=None):
    """Loads every `FoldN` directory below `root` in fold order, or `root`
    itself when it is a single fold."""
    if is_fold_directory(root):
        return [load_fold(root, dim)]
    names = [name for name in os.listdir(root)
             if re.fullmatch(r"Fold\d+", name) and os.path.isdir(os.path.join(root, name))]
    if not names:
        raise FileNotFoundError("no LETOR folds found in {}".format(root))
    names.sort(key=lambda name: int(name[4:]))
    return [load_fold(os.path.join(root, name), dim) for name in names]


def _tercile_grades(scores):
    order = np.argsort(-scores, kind="stable")
    grades = np.zeros(len(scores), dtype=int)
    for grade, block in zip((2, 1, 0), np.array_split(order, 3)):
        grades[block] = grade
    return grades


def gen_synthetic(d, n_queries, docs_per_query, seed):
    """Generates a ranking corpus whose optimal linear ranker is known.

    Features are standard normal draws; each query grades its documents
    by terciles of their score under the reference weights (top third
    2, middle 1, bottom 0), so every query has relevant documents.

    :returns: (QuerySet, reference_weights) where reference_weights is a
        unit vector. The same arguments always give the same output.
    :raises ConfigurationError: If a size is out of range.
    """
    if d < 2 or n_queries < 1 or docs_per_query < 3:
        raise ConfigurationError(
            "synthetic corpus needs d >= 2, n_queries >= 1, docs_per_query >= 3 "
            "(got d={}, n_queries={}, docs_per_query={})".format(d, n_queries, docs_per_query))
    rng = np.random.default_rng(seed)
    reference = rng.standard_normal(d)
    reference /= np.linalg.norm(reference)
    queries = []
    for q in range(n_queries):
        features = rng.standard_normal((docs_per_query, d))
        grades = _tercile_grades(features @ reference)
        documents = tuple(Document("q{}-d{}".format(q + 1, j), tuple(float(x) for x in row), int(g))
                          for j, (row, g) in enumerate(zip(features, grades)))
        queries.append(Query(str(q + 1), documents))
    return QuerySet(tuple(queries), d), reference


def synthetic_split(d, n_train, n_test, docs_per_query, seed):
    """Draws one synthetic corpus and splits it into train and test
    queries sharing the same reference weights."""
    if n_train < 1 or n_test < 1:
        raise ConfigurationError("synthetic split needs at least one train and one test query")
    corpus, reference = gen_synthetic(d, n_train + n_test, docs_per_query, seed)
    train = QuerySet(corpus.queries[:n_train], d)
    test = QuerySet(corpus.queries[n_train:], d)
    return FoldSplit(train, test, "synthetic"), reference
