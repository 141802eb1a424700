"""Builders for conditional equilibria.

Each builder returns a :class:`ConstructionResult`: the conditional profile,
the action profile it is meant to agree on, and a trace of the choices made.
The builders do not certify their own output; run the checks in
:mod:`condeq.deviation` on the result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _csp
from .conditional import (
    DOMINANT_AVERAGE,
    DOMINANT_ZERO,
    ConditionalProfile,
    ConditionalStrategy,
    SemanticsMode,
    best_response_strategy,
    classify,
    constant_profile,
    constant_strategy,
    fixed_points,
)
from .deviation import brute_force_best_deviation, is_cse
from .errors import (
    ActionSetTooSmall,
    NoDoubleMaxProfile,
    NotIndividuallyRational,
    NotThreePlayers,
    NotTwoPlayers,
    SearchExhausted,
    TooFewPlayers,
)
from .game import (
    Game,
    Profile,
    drop,
    insert,
    pareto_optimal_with_max_player,
    pure_maximin,
    pure_nash_equilibria,
)


class Theorem(str, enum.Enum):
    EXISTENCE = "existence"
    FOLK = "folk"
    PARETO3 = "pareto3"
    STRONG = "strong"
    GENERAL2P = "general2p"
    SUPPORT_N4 = "support_n4"


@dataclass(frozen=True)
class ConstructionResult:
    profile: ConditionalProfile
    intended_point: Profile | None
    theorem: Theorem
    mode: SemanticsMode
    notes: dict = field(default_factory=dict)


def _argmin_index(values):
    return values.index(min(values))


def _argmax_index(values):
    return values.index(max(values))


def build_existence(game: Game) -> ConstructionResult:
    """Sequential-commitment construction for any number of players.

    Player 0 best responds to everything. Each later player ``k`` ignores the
    players before it and, for every choice of the players after it, picks the
    action that is best once players ``0..k-1`` react along the chain. The
    last player's table is constant.
    """
    n = game.n
    first = best_response_strategy(game, 0)
    memo: dict[tuple[int, Profile], int] = {}

    def chain_action(j: int, suffix: Profile) -> int:
        if j == 0:
            return first(suffix)
        key = (j, suffix)
        if key not in memo:
            values = [game.u(j, complete(j, (x,) + suffix)) for x in range(game.sizes[j])]
            memo[key] = _argmax_index(values)
        return memo[key]

    def complete(k: int, suffix: Profile) -> Profile:
        a = tuple(suffix)
        for j in range(k - 1, -1, -1):
            a = (chain_action(j, a),) + a
        return a

    strategies = [first]
    for k in range(1, n):
        # Opponent tuple of k lists players k+1.. from position k on.
        strategies.append(ConditionalStrategy.from_function(game, k, lambda o, k=k: chain_action(k, o[k:])))
    point = complete(n, ())
    return ConstructionResult(
        ConditionalProfile(strategies), point, Theorem.EXISTENCE, DOMINANT_ZERO,
        {"chain_entries": len(memo)},
    )


def build_folk(game: Game, target: Sequence[int]) -> ConstructionResult:
    """Two-player support of an individually rational target.

    Off the target each player answers with the action that hurts the opponent
    most.
    """
    if game.n != 2:
        raise NotTwoPlayers(f"folk construction needs 2 players, got {game.n}")
    target = tuple(target)
    maximin = []
    for i in range(2):
        value, _ = pure_maximin(game, i)
        if game.u(i, target) < value:
            raise NotIndividuallyRational(i, value, game.u(i, target))
        maximin.append(value)
    strategies = []
    for i in range(2):
        other = 1 - i

        def rule(o, i=i, other=other):
            if o == drop(target, i):
                return target[i]
            return _argmin_index([game.u(other, insert(o, i, x)) for x in range(game.sizes[i])])

        strategies.append(ConditionalStrategy.from_function(game, i, rule))
    return ConstructionResult(
        ConditionalProfile(strategies), target, Theorem.FOLK, DOMINANT_ZERO,
        {"maximin": tuple(maximin)},
    )


def build_pareto3(game: Game) -> ConstructionResult:
    """Three-player construction whose only fixed point is a Pareto optimum.

    ``bar`` is Pareto optimal and gives player ``i`` their maximum payoff;
    ``alt`` differs from ``bar`` in every coordinate. ``j < k`` are the other
    two players.
    """
    if game.n != 3:
        raise NotThreePlayers(f"needs 3 players, got {game.n}")
    for l, m in enumerate(game.sizes):
        if m < 2:
            raise ActionSetTooSmall(l)
    bar, i = pareto_optimal_with_max_player(game)
    alt = tuple(0 if b != 0 else 1 for b in bar)
    j, k = (p for p in range(3) if p != i)

    def response(owner: int, a: Profile) -> int:
        """Table entry of ``owner`` at the opponents' part of full profile ``a``."""
        dev = {p: a[p] != bar[p] for p in range(3)}
        if owner == i:
            if dev[j] != dev[k]:
                return alt[i]
            return bar[i]
        # Players j and k return to bar unless both others left it.
        others = [p for p in range(3) if p != owner]
        if all(dev[p] for p in others):
            return alt[owner]
        return bar[owner]

    strategies = [
        ConditionalStrategy.from_function(game, p, lambda o, p=p: response(p, insert(o, p, 0)))
        for p in range(3)
    ]
    return ConstructionResult(
        ConditionalProfile(strategies), bar, Theorem.PARETO3, DOMINANT_ZERO,
        {"max_player": i, "alt": alt, "others": (j, k)},
    )


def find_double_max(game: Game) -> tuple[Profile, int, int]:
    """First profile (ascending) where two players with 2+ actions hit their maximum."""
    maxima = [game.max_payoff(p) for p in range(game.n)]
    small = None
    for a, vec in zip(game.profiles, game.payoffs):
        at_max = [p for p in range(game.n) if vec[p] == maxima[p]]
        eligible = [p for p in at_max if game.sizes[p] >= 2]
        if len(eligible) >= 2:
            return a, eligible[0], eligible[1]
        if len(at_max) >= 2 and small is None:
            small = next(p for p in at_max if game.sizes[p] < 2)
    if small is not None:
        raise ActionSetTooSmall(small)
    raise NoDoubleMaxProfile("no profile gives two players their maximum payoff")


def build_strong(game: Game) -> ConstructionResult:
    """Strong conditional equilibrium at a profile where players ``i, j`` both max out.

    The tables of ``i`` and ``j`` are chosen so that no profile other than
    ``bar`` is fixed by both, which leaves coalitions without ``i`` and ``j``
    unable to create any agreement. Other players only answer ``bar``.
    """
    bar, i, j = find_double_max(game)
    assignment = {(i, drop(bar, i)): bar[i], (j, drop(bar, j)): bar[j]}
    clauses = [
        _csp.Clause((((i, drop(a, i)), a[i]), ((j, drop(a, j)), a[j])))
        for a in game.profiles if a != bar
    ]
    domains = {}
    for clause in clauses:
        for var, _ in clause.literals:
            domains[var] = game.sizes[var[0]]
    solution = _csp.solve(clauses, assignment, domains)
    if solution is None:
        raise SearchExhausted("no tables for the two maximising players keep bar the only joint fixed point")
    strategies = []
    for p in range(game.n):
        if p in (i, j):
            table = [solution.get((p, o), 0) for o in game.opponent_profiles(p)]
        else:
            table = [bar[p] if o == drop(bar, p) else 0 for o in game.opponent_profiles(p)]
        strategies.append(ConditionalStrategy.for_game(game, p, table))
    return ConstructionResult(
        ConditionalProfile(strategies), bar, Theorem.STRONG, DOMINANT_ZERO,
        {"maximisers": (i, j)},
    )


def build_general_2p(game: Game, budget: int | None = None) -> ConstructionResult:
    """Two-player equilibrium when disagreements pay the average over ``D(s)``.

    Case ``nash``: constants at the first pure Nash equilibrium. Case
    ``best_response``: the mutual best-response profile when nobody gains by
    deviating from it. Case ``constant``: a deviating player commits to a
    constant action taken from the best fixed point of their best deviation.
    """
    if game.n != 2:
        raise NotTwoPlayers(f"needs 2 players, got {game.n}")
    mode = DOMINANT_AVERAGE
    nash = pure_nash_equilibria(game)
    if nash:
        return ConstructionResult(
            constant_profile(game, nash[0]), nash[0], Theorem.GENERAL2P, mode, {"case": "nash"}
        )
    sbar = ConditionalProfile([best_response_strategy(game, 0), best_response_strategy(game, 1)])
    cert = is_cse(game, sbar, mode, budget)
    if cert.holds:
        return ConstructionResult(sbar, None, Theorem.GENERAL2P, mode, {"case": "best_response"})
    i = cert.deviation.players[0]
    other = 1 - i
    _, deviation = brute_force_best_deviation(game, sbar, i, mode, budget)
    fps = fixed_points(game, sbar.with_strategy(deviation))
    notes = {"case": "constant", "deviator": i}
    if fps:
        pool = fps
    else:
        # Not covered by the case analysis: the best deviation keeps no fixed
        # point. Commit to the best point reachable against sbar instead.
        pool = [insert((sbar[other]((x,)),), i, x) for x in range(game.sizes[i])]
        notes["fallback"] = "best deviation has no fixed point"
    values = [game.u(i, a) for a in pool]
    best = max(values)
    chosen = min(a for a, v in zip(pool, values) if v == best)
    profile = sbar.with_strategy(constant_strategy(game, i, chosen[i]))
    point = fixed_points(game, profile)[0]
    return ConstructionResult(profile, point, Theorem.GENERAL2P, mode, notes)


def _support_clauses(game: Game, target: Profile, relaxed: bool):
    clauses = []
    gain = [game.u(p, target) for p in range(game.n)]
    for a in game.profiles:
        if a == target:
            continue
        literals = tuple(((p, drop(a, p)), a[p]) for p in range(game.n))
        solo = frozenset(p for p in range(game.n) if game.u(p, a) <= gain[p]) if relaxed else frozenset()
        clauses.append(_csp.Clause(literals, 2, solo))
    return clauses


def build_support_n4(
    game: Game, target: Sequence[int], node_limit: int = 200_000
) -> ConstructionResult:
    """Search for a profile agreeing on ``target`` that no single player can upset.

    First tries to make every other profile broken by at least two players, so
    no unilateral deviation can create a fixed point at all. If that fails,
    a profile may be broken by one player alone provided that player gains
    nothing there.
    """
    if game.n < 4:
        raise TooFewPlayers(f"needs at least 4 players, got {game.n}")
    for p, m in enumerate(game.sizes):
        if m < 2:
            raise ActionSetTooSmall(p)
    target = tuple(target)
    tried = []
    for relaxed in (False, True):
        assignment = {(p, drop(target, p)): target[p] for p in range(game.n)}
        clauses = _support_clauses(game, target, relaxed)
        domains = {var: game.sizes[var[0]] for c in clauses for var, _ in c.literals}
        try:
            solution = _csp.solve(clauses, assignment, domains, node_limit)
        except _csp.NodeLimit:
            tried.append(("relaxed" if relaxed else "strict", "node limit"))
            continue
        if solution is None:
            tried.append(("relaxed" if relaxed else "strict", "infeasible"))
            continue
        strategies = [
            ConditionalStrategy.for_game(game, p, [solution.get((p, o), 0) for o in game.opponent_profiles(p)])
            for p in range(game.n)
        ]
        profile = ConditionalProfile(strategies)
        notes = {"search": "relaxed" if relaxed else "strict", "tried": tuple(tried)}
        return ConstructionResult(profile, target, Theorem.SUPPORT_N4, DOMINANT_ZERO, notes)
    raise SearchExhausted(f"no supporting profile found for {target}: {tried}")


def intended_payoff(game: Game, result: ConstructionResult) -> tuple[Fraction, ...]:
    return classify(game, result.profile, result.mode).payoff
