"""Small named games used throughout the tests and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .game import Game


def prisoners_dilemma() -> Game:
    return Game(
        (("C", "D"), ("C", "D")),
        ((3, 3), (0, 4), (4, 0), (1, 1)),
        ("P1", "P2"),
        "prisoners dilemma",
    )


def matching_pennies() -> Game:
    """Player 1 wants to match, player 2 to mismatch; payoffs in {0, 1}."""
    return Game(
        (("H", "T"), ("H", "T")),
        ((1, 0), (0, 1), (0, 1), (1, 0)),
        ("P1", "P2"),
        "matching pennies",
    )


def coordination() -> Game:
    return Game(
        (("A", "B"), ("A", "B")),
        ((2, 2), (0, 0), (0, 0), (1, 1)),
        ("P1", "P2"),
        "coordination",
    )


def strong_counterexample() -> Game:
    """Three-player game in which every conditional profile admits a profitable coalition deviation.

    Player 1 picks the row (x, y), player 2 the column (A, B), player 3 the
    matrix (L, R).
    """
    table = {
        ("x", "A", "L"): (2, 1, 0), ("x", "A", "R"): (2, 1, 0),
        ("x", "B", "L"): (0, 2, 1), ("x", "B", "R"): (0, 0, 0),
        ("y", "A", "L"): (0, 0, 0), ("y", "A", "R"): (1, 0, 2),
        ("y", "B", "L"): (0, 2, 1), ("y", "B", "R"): (1, 0, 2),
    }
    actions = (("x", "y"), ("A", "B"), ("L", "R"))
    return Game.from_function(
        actions,
        lambda p: table[tuple(actions[i][a] for i, a in enumerate(p))],
        ("P1", "P2", "P3"),
        "no strong conditional equilibrium",
    )


def random_game(rng: random.Random, sizes, low=0, high=10) -> Game:
    """Integer payoffs drawn uniformly from ``[low, high]``."""
    actions = tuple(tuple(f"a{k}" for k in range(m)) for m in sizes)
    n = len(sizes)
    total = 1
    for m in sizes:
        total *= m
    payoffs = tuple(tuple(rng.randint(low, high) for _ in range(n)) for _ in range(total))
    return Game(actions, payoffs)


def random_rational_distribution(rng: random.Random, size: int, max_denominator: int = 12):
    """Exact distribution whose entries share a random denominator ``<= max_denominator``."""
    q = rng.randint(1, max_denominator)
    cuts = sorted(rng.randint(0, q) for _ in range(size - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [q])]
    return tuple(Fraction(p, q) for p in parts)
