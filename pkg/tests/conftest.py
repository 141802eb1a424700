import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from condeq.conditional import ConditionalProfile, ConditionalStrategy
from condeq.game import Game
from condeq.library import (
    coordination,
    matching_pennies,
    prisoners_dilemma,
    strong_counterexample,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture
def pd():
    return prisoners_dilemma()


@pytest.fixture
def pennies():
    return matching_pennies()


@pytest.fixture
def coord():
    return coordination()


@pytest.fixture
def fig():
    return strong_counterexample()


def random_profile(rng: random.Random, game: Game) -> ConditionalProfile:
    return ConditionalProfile(
        ConditionalStrategy.for_game(
            game, i, [rng.randrange(game.sizes[i]) for _ in game.opponent_profiles(i)]
        )
        for i in range(game.n)
    )


@st.composite
def games(draw, min_players=2, max_players=3, max_actions=3, max_payoff=4):
    n = draw(st.integers(min_players, max_players))
    sizes = draw(st.lists(st.integers(1, max_actions), min_size=n, max_size=n))
    total = 1
    for m in sizes:
        total *= m
    payoffs = draw(
        st.lists(
            st.lists(st.integers(0, max_payoff), min_size=n, max_size=n),
            min_size=total, max_size=total,
        )
    )
    actions = tuple(tuple(f"a{k}" for k in range(m)) for m in sizes)
    return Game(actions, tuple(map(tuple, payoffs)))


@st.composite
def games_with_profile(draw, **kwargs):
    game = draw(games(**kwargs))
    strategies = []
    for i in range(game.n):
        k = len(game.opponent_profiles(i))
        table = draw(st.lists(st.integers(0, game.sizes[i] - 1), min_size=k, max_size=k))
        strategies.append(ConditionalStrategy.for_game(game, i, table))
    return game, ConditionalProfile(strategies)
