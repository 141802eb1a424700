import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from condeq.conditional import (
    DOMINANT_AVERAGE,
    DOMINANT_ZERO,
    UNIQUE_ZERO,
    ConditionalProfile,
    ConditionalStrategy,
    best_response_strategy,
    classify,
    constant_profile,
    constant_strategy,
    strategy_space_size,
)
from condeq.constructors import build_existence, build_folk, build_pareto3, build_strong
from condeq.deviation import (
    Verdict,
    best_unilateral_deviation_value,
    brute_force_deviation_value,
    coalition_deviation_exists,
    enumerate_cse,
    is_cse,
    is_strong_ce,
    iter_strategies,
    residual_classes,
    residual_fixed_set,
)
from condeq.errors import BudgetExceeded, UnsupportedSemantics
from condeq.game import Game, drop, pure_maximin
from condeq.library import random_game
from conftest import games_with_profile, random_profile


def test_pd_oracle_example(pd):
    s = ConditionalProfile([best_response_strategy(pd, 0), constant_strategy(pd, 1, 1)])
    # F_{-2} = {(D,C), (D,D)}: one class keyed by a_1 = D holding both actions
    assert residual_classes(pd, s, 1) == {(1,): (0, 1)}
    value, witness = best_unilateral_deviation_value(pd, s, 1)
    assert value == 1
    assert classify(pd, s.with_strategy(witness)).payoff[1] == 1


def test_single_action_deviator():
    g = Game((("a", "b"), ("only",)), ((1, 2), (0, 5)))
    s = constant_profile(g, (0, 0))
    # player 2 cannot exclude anything; the only selection is (a, only)
    assert best_unilateral_deviation_value(g, s, 1) == (2, best_unilateral_deviation_value(g, s, 1)[1])
    assert brute_force_deviation_value(g, s, 1) == 2


def test_matching_pennies_unique_zero(pennies):
    sbar = ConditionalProfile([best_response_strategy(pennies, 0), best_response_strategy(pennies, 1)])
    # s2(H)=T, s2(T)=H, so F_{-1} = {(H,T), (T,H)}
    assert residual_classes(pennies, sbar, 0) == {(1,): (0,), (0,): (1,)}
    value, _ = best_unilateral_deviation_value(pennies, sbar, 0, UNIQUE_ZERO)
    assert value == 0
    assert brute_force_deviation_value(pennies, sbar, 0, UNIQUE_ZERO) == 0


def test_brute_force_average_matching_pennies(pennies):
    sbar = ConditionalProfile([best_response_strategy(pennies, 0), best_response_strategy(pennies, 1)])
    values = [classify(pennies, sbar.with_strategy(st), DOMINANT_AVERAGE).payoff[0]
              for st in iter_strategies(pennies, 0)]
    # constants reach (H,T) or (T,H) worth 0; the swap fixes both, tied at 0; sbar_1 averages to 1/2
    assert values == [0, Fraction(1, 2), 0, 0]
    assert brute_force_deviation_value(pennies, sbar, 0, DOMINANT_AVERAGE) == Fraction(1, 2)


def test_oracle_rejects_average(pennies):
    s = constant_profile(pennies, (0, 0))
    with pytest.raises(UnsupportedSemantics):
        best_unilateral_deviation_value(pennies, s, 0, DOMINANT_AVERAGE)
    with pytest.raises(UnsupportedSemantics):
        coalition_deviation_exists(pennies, s, (0,), DOMINANT_AVERAGE)


def test_budget_is_enforced(fig):
    s = constant_profile(fig, (0, 0, 0))
    with pytest.raises(BudgetExceeded):
        brute_force_deviation_value(fig, s, 0, budget=10)


def test_is_cse_examples(pd):
    assert is_cse(pd, build_existence(pd).profile).holds
    naive = ConditionalProfile([constant_strategy(pd, 0, 0), constant_strategy(pd, 1, 0)])
    cert = is_cse(pd, naive)
    assert cert.verdict is Verdict.DEVIATION_FOUND
    dev = cert.deviation
    assert dev.players == (0,) and dev.point == (1, 0) and dev.payoff[0] == 4 and dev.gains == (1,)
    single = Game((("a",), ("b",)), ((3, 1),))
    assert is_cse(single, constant_profile(single, (0, 0))).holds


def test_coalition_deviation_from_pareto_point(fig):
    s = constant_profile(fig, (0, 0, 0))
    dev = coalition_deviation_exists(fig, s, (1, 2))
    assert dev is not None
    assert dev.point == (0, 1, 0)
    assert dev.gains == (1, 1)


def test_grand_coalition_moves_to_dominating_profile():
    g = Game((("a", "b"), ("c", "d")), ((1, 1), (0, 0), (0, 0), (3, 2)))
    s = constant_profile(g, (0, 0))
    dev = coalition_deviation_exists(g, s, (0, 1))
    assert dev is not None and dev.point == (1, 1) and dev.gains == (2, 1)


def test_pareto3_profile_is_cse_but_not_strong(fig):
    s = build_pareto3(fig).profile
    assert is_cse(fig, s).holds
    cert = is_strong_ce(fig, s)
    assert cert.verdict is Verdict.DEVIATION_FOUND
    assert len(cert.deviation.players) >= 2
    assert all(g > 0 for g in cert.deviation.gains)


def test_build_strong_coordination_is_strong(coord):
    assert is_strong_ce(coord, build_strong(coord).profile).holds


def test_enumerate_pd(pd):
    found = enumerate_cse(pd)
    maximin = tuple(pure_maximin(pd, i)[0] for i in range(2))
    assert all(all(p >= m for p, m in zip(payoff, maximin)) for _, payoff in found)
    points = {classify(pd, s).dominant_point for s, _ in found}
    # (C,C) and (D,D) give both players at least 1
    assert points == {(0, 0), (1, 1)}


def test_enumerate_matching_pennies(pennies):
    found = enumerate_cse(pennies)
    points = {classify(pennies, s).dominant_point for s, _ in found}
    # every cell gives each player at least the maximin 0; disagreement profiles pay (0,0) and also qualify
    assert points == set(pennies.profiles) | {None}


def test_enumerate_trivial_game():
    g = Game((("a",), ("b",)), ((0, 0),))
    assert len(enumerate_cse(g)) == 1


def _small(game):
    return all(strategy_space_size(game, i) <= 512 for i in range(game.n))


@settings(max_examples=150, deadline=None)
@given(games_with_profile(max_actions=3))
def test_oracle_matches_brute_force(gs):
    game, s = gs
    assume(_small(game))
    for mode in (DOMINANT_ZERO, UNIQUE_ZERO):
        for i in range(game.n):
            value, witness = best_unilateral_deviation_value(game, s, i, mode)
            assert value == brute_force_deviation_value(game, s, i, mode)
            if witness is not None:
                report = classify(game, s.with_strategy(witness), mode)
                assert report.is_agreement and report.payoff[i] == value


@settings(max_examples=100, deadline=None)
@given(games_with_profile(max_actions=2))
def test_singleton_coalition_matches_unilateral(gs):
    game, s = gs
    base = classify(game, s).payoff
    for i in range(game.n):
        value, _ = best_unilateral_deviation_value(game, s, i)
        dev = coalition_deviation_exists(game, s, (i,))
        assert (dev is not None) == (value > base[i])


@settings(max_examples=100, deadline=None)
@given(games_with_profile(max_actions=2))
def test_certificates_recheck_from_scratch(gs):
    game, s = gs
    for mode in (DOMINANT_ZERO, UNIQUE_ZERO):
        base = classify(game, s, mode).payoff
        for cert in (is_cse(game, s, mode), is_strong_ce(game, s, mode)):
            if cert.holds:
                continue
            dev = cert.deviation
            report = classify(game, dev.apply(s), mode)
            assert report.is_agreement
            assert report.payoff == dev.payoff
            assert all(report.payoff[j] > base[j] for j in dev.players)


@settings(max_examples=60, deadline=None)
@given(games_with_profile(max_actions=2))
def test_deviation_value_ignores_own_table(gs):
    game, s = gs
    rng = random.Random(0)
    for i in range(game.n):
        other = random_profile(rng, game)[i]
        swapped = s.with_strategy(other)
        v1, _ = best_unilateral_deviation_value(game, s, i)
        v2, _ = best_unilateral_deviation_value(game, swapped, i)
        assert v1 == v2
        # a worse own payoff can only keep a profitable deviation profitable
        u1, u2 = classify(game, s).payoff[i], classify(game, swapped).payoff[i]
        if v1 > u1 and u2 <= u1:
            assert v2 > u2


def _add_target(game, s, i, b):
    """Make every player but ``i`` answer ``b``; ``None`` if that changes the fixed points of ``s``."""
    mutated = s
    for j in range(game.n):
        if j == i:
            continue
        table = list(s[j].table)
        table[game.opponent_profiles(j).index(drop(b, j))] = b[j]
        mutated = mutated.with_strategy(ConditionalStrategy.for_game(game, j, table))
    assert b in residual_fixed_set(game, mutated, (i,))
    if classify(game, mutated).fixed_points != classify(game, s).fixed_points:
        return None
    return mutated


def test_adding_a_better_target_keeps_the_deviation():
    rng = random.Random(9)
    exercised = 0
    for _ in range(300):
        sizes = tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 3)))
        game = random_game(rng, sizes, 0, 4)
        s = random_profile(rng, game)
        base = classify(game, s).payoff
        for i in range(game.n):
            value, _ = best_unilateral_deviation_value(game, s, i)
            if value <= base[i]:
                continue
            for b in game.profiles:
                if game.u(i, b) <= value:
                    continue
                mutated = _add_target(game, s, i, b)
                if mutated is None or best_unilateral_deviation_value(game, mutated, i)[0] < game.u(i, b):
                    continue  # U moved, or b is not achievable as an agreement
                exercised += 1
                assert is_cse(game, mutated).verdict is Verdict.DEVIATION_FOUND
                assert coalition_deviation_exists(game, mutated, (i,)) is not None
    assert exercised >= 20


def test_folk_characterisation_small_corpus():
    rng = random.Random(11)
    for _ in range(30):
        payoffs = tuple((rng.randint(0, 2), rng.randint(0, 2)) for _ in range(4))
        g = Game((("a", "b"), ("c", "d")), payoffs)
        maximin = [pure_maximin(g, i)[0] for i in range(2)]
        supported = {classify(g, s).dominant_point for s, _ in enumerate_cse(g)} - {None}
        rational = {a for a in g.profiles if all(g.u(i, a) >= maximin[i] for i in range(2))}
        assert supported == rational
        for a in rational:
            assert is_cse(g, build_folk(g, a).profile).holds


def test_witness_table_is_valid(fig):
    rng = random.Random(5)
    for _ in range(20):
        s = random_profile(rng, fig)
        for i in range(3):
            _, witness = best_unilateral_deviation_value(fig, s, i)
            if witness is not None:
                assert isinstance(witness, ConditionalStrategy) and witness.owner == i
