"""
Matching pennies when disagreements are averaged
================================================

If a profile has no fixed point, every player can instead be paid the
average over the points the players' strategies point at. Under that rule
every two-player game has a pure conditional equilibrium.
"""

import random

from condeq import build_general_2p, classify, is_cse
from condeq.conditional import DOMINANT_AVERAGE
from condeq.game import pure_nash_equilibria
from condeq.library import matching_pennies, random_game


def show(vec):
    return "(" + ", ".join(str(x) for x in vec) + ")"


game = matching_pennies()
result = build_general_2p(game)
report = classify(game, result.profile, DOMINANT_AVERAGE)
print("case:", result.notes["case"])
print("fixed points:", report.fixed_points)
print("disagreement set:", [game.profile_names(a) for a in report.disagreement_set])
print("payoff:", show(report.payoff))

# The same construction on random games with no pure Nash equilibrium.
rng = random.Random(1)
cases = {}
while sum(cases.values()) < 25:
    g = random_game(rng, (3, 3))
    if pure_nash_equilibria(g):
        continue
    built = build_general_2p(g)
    assert is_cse(g, built.profile, DOMINANT_AVERAGE).holds
    cases[built.notes["case"]] = cases.get(built.notes["case"], 0) + 1
print("random no-Nash 3x3 games, all verified:", cases)
