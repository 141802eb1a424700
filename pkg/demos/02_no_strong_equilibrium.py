"""
A game without a strong conditional equilibrium
===============================================

Three players, two actions each, so every player has 2**4 = 16 conditional
strategies and there are 4096 conditional profiles. We scan all of them and
find a profitable coalition deviation every time.
"""

from condeq import build_pareto3, classify, is_cse, is_strong_ce, scan_strong_ce
from condeq.conditional import DOMINANT_ZERO, UNIQUE_ZERO
from condeq.game import describe
from condeq.library import strong_counterexample


def show(vec):
    return "(" + ", ".join(str(x) for x in vec) + ")"


game = strong_counterexample()
print(describe(game))

# A Pareto-optimal conditional equilibrium exists ...
result = build_pareto3(game)
s = result.profile
print("agreement at", game.profile_names(result.intended_point), "paying", show(classify(game, s).payoff))
print("unilateral deviations:", is_cse(game, s).verdict.value)

# ... but players 2 and 3 can jointly do better.
dev = is_strong_ce(game, s).deviation
print("coalition", [game.players[p] for p in dev.players], "moves to",
      game.profile_names(dev.point), "gaining", show(dev.gains))

for mode in (DOMINANT_ZERO, UNIQUE_ZERO):
    scan = scan_strong_ce(game, mode)
    print(f"{mode}: {len(scan.strong)} strong CE among {scan.profiles} profiles")
