"""
Cooperation in the prisoners' dilemma
=====================================

Plain actions cannot sustain (C, C) in the one-shot prisoners' dilemma.
Conditional strategies can: each player commits to cooperate when the other
cooperates and to defect otherwise.
"""

from condeq import build_existence, build_folk, classify, is_cse
from condeq.conditional import ConditionalProfile, constant_strategy
from condeq.game import describe, pure_maximin
from condeq.library import prisoners_dilemma


def show(vec):
    return "(" + ", ".join(str(x) for x in vec) + ")"


game = prisoners_dilemma()
print(describe(game))

# The sequential-commitment construction lands on mutual defection.
result = build_existence(game)
print("existence construction agrees on", game.profile_names(result.intended_point))

# Both players can guarantee themselves 1, so any profile paying at least (1, 1)
# is supportable. Build the commitment for (C, C).
print("maximin:", show(pure_maximin(game, i)[0] for i in range(2)))
folk = build_folk(game, game.parse_profile("C,C"))
for i, strategy in enumerate(folk.profile):
    print(game.players[i], {game.actions[1 - i][o[0]]: game.actions[i][strategy(o)] for o in game.opponent_profiles(i)})
print("induced payoff:", show(classify(game, folk.profile).payoff))
print("equilibrium?", is_cse(game, folk.profile).verdict.value)

# Unconditional cooperation is exploitable: player 1 switches to a constant D.
naive = ConditionalProfile([constant_strategy(game, 0, 0), constant_strategy(game, 1, 0)])
cert = is_cse(game, naive)
dev = cert.deviation
print("naive cooperation:", cert.verdict.value, "->", game.profile_names(dev.point), "gains", show(dev.gains))
