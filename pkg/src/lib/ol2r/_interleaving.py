#!/usr/bin/env python3

## Team-draft interleaving and multileaving with click credit.

from dataclasses import dataclass

import numpy as np

__all__ = ["DISPLAY_LENGTH", "InterleavedList", "team_draft", "attribute_credit", "infer_winners"]

DISPLAY_LENGTH = 10


@dataclass(frozen=True)
class InterleavedList:
    """The displayed list: document indices and the team that placed each.

    :param tuple documents: Document indices into the query, top first.
    :param tuple teams: Team (ranker) id for every position.
    """
    documents: tuple
    teams: tuple

    def __len__(self):
        return len(self.documents)

    def contributions(self, team_count):
        counts = np.zeros(team_count, dtype=int)
        for team in self.teams:
            counts[team] += 1
        return counts


def team_draft(lists, display_length, rng):
    """Team-draft multileaving of two or more ranked lists.

    Every round draws a random order of the teams; in that order each team
    appends its highest ranked document not yet shown. A team whose list
    is exhausted sits the round out. Rounds continue until the list holds
    `display_length` documents or no team has anything left.

    :param lists: Ranked lists (sequences of document indices) over the
        same query.
    :param int display_length: Maximum length of the displayed list.
    :param numpy.random.Generator rng: Source of the round orders.
    """
    lists = [list(l) for l in lists]
    if len(lists) < 2:
        raise ValueError("team draft needs at least two ranked lists")
    if display_length < 1:
        raise ValueError("display length must be positive")
    n_teams = len(lists)
    pointers = [0] * n_teams
    placed = set()
    documents, teams = [], []

    def next_document(team):
        ranking = lists[team]
        while pointers[team] < len(ranking) and ranking[pointers[team]] in placed:
            pointers[team] += 1
        if pointers[team] < len(ranking):
            return ranking[pointers[team]]
        return None

    exhausted = False
    while len(documents) < display_length and not exhausted:
        exhausted = True
        for team in rng.permutation(n_teams):
            if len(documents) >= display_length:
                break
            doc = next_document(team)
            if doc is None:
                continue
            exhausted = False
            placed.add(doc)
            documents.append(int(doc))
            teams.append(int(team))
    return InterleavedList(tuple(documents), tuple(teams))


def attribute_credit(interleaved, clicks, team_count):
    """Counts the clicks landing on each team's documents.

    :param clicks: 1-based clicked positions (a ClickOutcome or iterable).
    """
    positions = getattr(clicks, "positions", clicks)
    credits = np.zeros(team_count, dtype=int)
    for position in positions:
        if not 1 <= position <= len(interleaved):
            raise ValueError("click position {} outside a list of length {}".format(
                position, len(interleaved)))
        credits[interleaved.teams[position - 1]] += 1
    return credits


def infer_winners(credits):
    """The rankers with maximal credit, ascending. Without any clicks the
    current ranker (0) is the sole winner."""
    credits = np.asarray(credits)
    if not credits.any():
        return (0,)
    return tuple(int(i) for i in np.flatnonzero(credits == credits.max()))
