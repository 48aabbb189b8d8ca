#!/usr/bin/env python3

from src.lib.ol2r import Document, Query, QuerySet


def make_query(features, grades, qid="1"):
    """A query whose document i has features[i] and grade grades[i]."""
    return Query(qid, tuple(Document("{}-{}".format(qid, i), tuple(float(x) for x in row), int(g))
                            for i, (row, g) in enumerate(zip(features, grades))))


def make_query_set(*queries):
    return QuerySet(tuple(queries), queries[0].dim)
