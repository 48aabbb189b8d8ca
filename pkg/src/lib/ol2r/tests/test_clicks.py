#!/usr/bin/env python3

import numpy as np
import pytest

from src.lib.ol2r import (CLICK_MODELS, INFORMATIONAL, NAVIGATIONAL, PERFECT, ClickModel,
                          ConfigurationError, get_click_model, simulate)

TRIALS = 10000


def click_rate(model, grades, position, seed):
    rng = np.random.default_rng(seed)
    return np.mean([position in simulate(grades, model, rng).positions for _ in range(TRIALS)])


def test_perfect_user_clicks_half_of_the_marginal_documents():
    assert click_rate(PERFECT, [1], 1, seed=0) == pytest.approx(0.5, abs=0.02)


def test_perfect_user_is_deterministic_at_the_extremes():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        assert simulate([2, 0, 2, 0, 2], PERFECT, rng).positions == (1, 3, 5)


def test_navigational_user_usually_stops_after_a_highly_relevant_click():
    rng = np.random.default_rng(2)
    first_clicked = stopped = 0
    for _ in range(TRIALS):
        clicks = simulate([2, 2], NAVIGATIONAL, rng)
        if 1 in clicks.positions:
            first_clicked += 1
            stopped += 2 not in clicks.positions
    # a user who went on still skips the second document 5% of the time
    assert stopped / first_clicked == pytest.approx(0.9 + 0.1 * 0.05, abs=0.02)


def test_informational_user_clicks_irrelevant_documents():
    assert click_rate(INFORMATIONAL, [0], 1, seed=3) == pytest.approx(0.4, abs=0.02)


def test_no_click_after_the_user_stops():
    always_stop = ClickModel("always-stop", (0.5, 0.5, 0.5), (1.0, 1.0, 1.0))
    rng = np.random.default_rng(4)
    for _ in range(TRIALS):
        grades = rng.integers(0, 3, size=10)
        assert len(simulate(grades, always_stop, rng)) <= 1


def test_clicks_are_ascending_positions_within_the_list():
    rng = np.random.default_rng(5)
    for model in CLICK_MODELS.values():
        for _ in range(1000):
            grades = rng.integers(0, 3, size=int(rng.integers(0, 11)))
            positions = model.simulate(grades, rng).positions
            assert list(positions) == sorted(set(positions))
            assert all(1 <= p <= len(grades) for p in positions)


def test_invalid_grade():
    with pytest.raises(ValueError):
        simulate([0, 3], PERFECT, np.random.default_rng(0))


def test_model_tables_are_validated():
    with pytest.raises(ValueError):
        ClickModel("bad", (0.1, 0.2), (0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        ClickModel("bad", (0.1, 0.2, 1.5), (0.0, 0.0, 0.0))


def test_lookup_by_name():
    assert get_click_model("navigational") is NAVIGATIONAL
    with pytest.raises(ConfigurationError):
        get_click_model("impatient")
