import random
from fractions import Fraction

import pytest

from condeq.conditional import (
    DOMINANT_AVERAGE,
    DOMINANT_ZERO,
    UNIQUE_ZERO,
    classify,
    fixed_points,
)
from condeq.constructors import (
    Theorem,
    build_existence,
    build_folk,
    build_general_2p,
    build_pareto3,
    build_strong,
    build_support_n4,
    find_double_max,
)
from condeq.deviation import is_cse, is_strong_ce
from condeq.errors import (
    ActionSetTooSmall,
    NoDoubleMaxProfile,
    NotIndividuallyRational,
    NotThreePlayers,
    NotTwoPlayers,
    TooFewPlayers,
)
from condeq.game import Game, drop, is_pareto_optimal, pareto_dominates_weakly, pure_maximin
from condeq.library import random_game


def check_invariant(game, result):
    point = result.intended_point
    assert point in fixed_points(game, result.profile)
    report = classify(game, result.profile, result.mode)
    assert report.is_agreement and report.payoff == game.payoff(point)


def test_existence_pd(pd):
    result = build_existence(pd)
    assert result.theorem is Theorem.EXISTENCE
    assert result.intended_point == (1, 1)
    assert result.profile[0].table == (1, 1)
    assert result.profile[1].is_constant()
    check_invariant(pd, result)
    assert classify(pd, result.profile).payoff == (1, 1)


def test_existence_dominance_solvable():
    # row: b dominates a; column then prefers d against b
    g = Game((("a", "b"), ("c", "d")), ((1, 0), (0, 3), (2, 1), (1, 2)))
    assert build_existence(g).intended_point == (1, 1)


def test_existence_trivial_game():
    g = Game((("a",), ("b",), ("c",)), ((4, 4, 4),))
    assert build_existence(g).intended_point == (0, 0, 0)


def test_existence_prefix_is_ignored(fig):
    s = build_existence(fig).profile
    # player 2's entries depend only on player 3's action
    for o in fig.opponent_profiles(1):
        assert s[1](o) == s[1]((0, o[1]))


def test_folk_pd_cooperation(pd):
    result = build_folk(pd, (0, 0))
    assert result.profile[0].table == (0, 1)
    assert result.profile[1].table == (0, 1)
    check_invariant(pd, result)
    assert classify(pd, result.profile).payoff == (3, 3)
    assert is_cse(pd, result.profile).holds


def test_folk_rejects_irrational_target(pd):
    with pytest.raises(NotIndividuallyRational) as info:
        build_folk(pd, (0, 1))
    assert (info.value.player, info.value.maximin, info.value.value) == (0, 1, 0)


def test_folk_at_nash(pd):
    result = build_folk(pd, (1, 1))
    assert result.intended_point == (1, 1)
    assert is_cse(pd, result.profile).holds


def test_folk_needs_two_players(fig):
    with pytest.raises(NotTwoPlayers):
        build_folk(fig, (0, 0, 0))


def test_folk_other_fixed_points_are_dominated():
    rng = random.Random(3)
    for _ in range(100):
        g = random_game(rng, (rng.randint(1, 3), rng.randint(1, 3)), 0, 5)
        maximin = [pure_maximin(g, i)[0] for i in range(2)]
        for a in g.profiles:
            if all(g.u(i, a) >= maximin[i] for i in range(2)):
                s = build_folk(g, a).profile
                for b in fixed_points(g, s):
                    assert pareto_dominates_weakly(g.payoff(a), g.payoff(b))
                assert is_cse(g, s).holds


def test_pareto3_figure(fig):
    result = build_pareto3(fig)
    assert result.intended_point == (0, 0, 0)
    assert result.notes["max_player"] == 0
    assert result.notes["alt"] == (1, 1, 1)
    assert fixed_points(fig, result.profile) == ((0, 0, 0),)
    assert classify(fig, result.profile).payoff == (2, 1, 0)
    assert is_cse(fig, result.profile).holds
    assert is_cse(fig, result.profile, UNIQUE_ZERO).holds


def test_pareto3_constant_payoffs():
    g = Game.from_function((("a", "b"),) * 3, lambda a: (1, 1, 1))
    result = build_pareto3(g)
    assert result.intended_point == (0, 0, 0)
    assert len(fixed_points(g, result.profile)) == 1
    assert is_cse(g, result.profile).holds


def test_pareto3_errors(pd):
    with pytest.raises(NotThreePlayers):
        build_pareto3(pd)
    g = Game.from_function((("a", "b"), ("only",), ("c", "d")), lambda a: (a[0], 0, a[2]))
    with pytest.raises(ActionSetTooSmall) as info:
        build_pareto3(g)
    assert info.value.player == 1


def test_pareto3_random_three_action_games():
    rng = random.Random(8)
    for _ in range(40):
        g = random_game(rng, (rng.randint(2, 3), rng.randint(2, 3), rng.randint(2, 3)), 0, 6)
        result = build_pareto3(g)
        assert fixed_points(g, result.profile) == (result.intended_point,)
        assert is_pareto_optimal(g, result.intended_point)
        assert is_cse(g, result.profile).holds


def test_strong_coordination(coord):
    result = build_strong(coord)
    assert result.intended_point == (0, 0)
    s = result.profile
    assert fixed_points(coord, s) == ((0, 0),)
    # the proof's constraint between the two maximisers
    for a in coord.profiles:
        if a == (0, 0):
            continue
        for l, k in ((0, 1), (1, 0)):
            if s[l](drop(a, l)) == a[l]:
                assert s[k](drop(a, k)) != a[k]
    assert is_strong_ce(coord, s).holds


def test_strong_figure_has_no_double_max(fig):
    with pytest.raises(NoDoubleMaxProfile):
        build_strong(fig)


def test_strong_common_payoff():
    g = Game((("a", "b", "c"), ("d", "e")), ((1, 1), (0, 0), (2, 2), (5, 5), (3, 3), (1, 1)))
    result = build_strong(g)
    assert result.intended_point == (1, 1)
    assert is_strong_ce(g, result.profile).holds


def test_strong_single_action_maximiser():
    g = Game((("a", "b"), ("only",)), ((1, 1), (0, 0)))
    with pytest.raises(ActionSetTooSmall):
        find_double_max(g)


def test_general_2p_pd(pd):
    result = build_general_2p(pd)
    assert result.notes["case"] == "nash"
    assert result.intended_point == (1, 1)
    assert classify(pd, result.profile, DOMINANT_AVERAGE).payoff == (1, 1)


def test_general_2p_matching_pennies(pennies):
    result = build_general_2p(pennies)
    assert result.notes["case"] == "best_response"
    assert result.intended_point is None
    report = classify(pennies, result.profile, DOMINANT_AVERAGE)
    assert report.payoff == (Fraction(1, 2), Fraction(1, 2))
    assert is_cse(pennies, result.profile, DOMINANT_AVERAGE).holds


def test_general_2p_one_action_column():
    g = Game((("a", "b", "c"), ("only",)), ((0, 0), (1, 0), (2, 0)))
    result = build_general_2p(g)
    assert result.notes["case"] == "nash" and result.intended_point == (2, 0)


def test_general_2p_needs_two_players(fig):
    with pytest.raises(NotTwoPlayers):
        build_general_2p(fig)


def test_general_2p_constant_case_is_exercised():
    rng = random.Random(21)
    cases = set()
    while len(cases) < 2:
        g = random_game(rng, (3, 3), 0, 10)
        result = build_general_2p(g)
        if result.notes["case"] == "nash":
            continue
        cases.add(result.notes["case"])
        assert is_cse(g, result.profile, DOMINANT_AVERAGE).holds
        if result.intended_point is not None:
            check_invariant(g, result)


def test_support_n4_needs_four_players(fig):
    with pytest.raises(TooFewPlayers):
        build_support_n4(fig, (0, 0, 0))


def test_support_n4_indicator_payoffs():
    target = (1, 0, 1, 0)
    g = Game.from_function((("0", "1"),) * 4, lambda a: (1,) * 4 if a == target else (0,) * 4)
    result = build_support_n4(g, target)
    assert fixed_points(g, result.profile) == (target,)
    assert is_cse(g, result.profile).holds


def test_support_n4_random():
    rng = random.Random(4)
    for _ in range(8):
        g = random_game(rng, (2, 2, 2, 2), 0, 3)
        target = rng.choice(g.profiles)
        result = build_support_n4(g, target)
        check_invariant(g, result)
        assert is_cse(g, result.profile, DOMINANT_ZERO).holds


@pytest.mark.parametrize("seed", range(5))
def test_constructions_verify_on_random_games(seed):
    rng = random.Random(seed)
    for sizes in ((2, 2), (3, 2), (2, 2, 2), (3, 2, 2)):
        g = random_game(rng, sizes)
        result = build_existence(g)
        check_invariant(g, result)
        assert is_cse(g, result.profile).holds
