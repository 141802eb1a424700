"""Equilibrium checks for conditional profiles.

Under zero disagreement payoffs a deviation only pays when it produces an
agreement, and the agreements a deviator can produce are determined by the
points the other players already fix. :func:`best_unilateral_deviation_value`
exploits this to avoid enumerating the deviator's ``m_i ** |A_{-i}|`` tables;
:func:`brute_force_deviation_value` enumerates them and serves as the
independent check.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import _csp
from .conditional import (
    DOMINANT_ZERO,
    Agreement,
    ConditionalProfile,
    ConditionalStrategy,
    Disagreement,
    SemanticsMode,
    classify,
    strategy_space_size,
)
from .errors import BudgetExceeded, UnsupportedSemantics
from .game import Game, PayoffVector, Profile, drop, insert, pareto_dominates_weakly

DEVIATION_BUDGET = 10**6
ENUMERATION_BUDGET = 10**7


def default_budget(fallback: int) -> int:
    """``CSE_BUDGET`` from the environment, else ``fallback``."""
    value = os.environ.get("CSE_BUDGET")
    return int(value) if value else fallback


class Verdict(str, enum.Enum):
    NO_PROFITABLE_DEVIATION = "no_profitable_deviation"
    DEVIATION_FOUND = "deviation_found"


@dataclass(frozen=True)
class Deviation:
    """Replacement tables for ``players`` and what they achieve."""

    players: tuple[int, ...]
    strategies: tuple[ConditionalStrategy, ...]
    point: Profile | None
    payoff: PayoffVector
    gains: tuple[Fraction, ...]

    def apply(self, s: ConditionalProfile) -> ConditionalProfile:
        return _apply(s, self.strategies)


@dataclass(frozen=True)
class DeviationCertificate:
    verdict: Verdict
    mode: SemanticsMode
    payoff: PayoffVector
    deviation: Deviation | None = None
    coalitions_checked: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.NO_PROFITABLE_DEVIATION


def _require_zero(mode: SemanticsMode, what: str) -> None:
    if mode.disagreement is not Disagreement.ZERO:
        raise UnsupportedSemantics(
            f"{what} needs zero disagreement payoffs; use brute force for {mode}"
        )


def residual_fixed_set(game: Game, s: ConditionalProfile, coalition: Iterable[int]) -> tuple[Profile, ...]:
    """Profiles fixed by every player outside ``coalition``."""
    members = set(coalition)
    outside = [st for st in s if st.owner not in members]
    return tuple(a for a in game.profiles if all(st.respond(a) == a[st.owner] for st in outside))


def residual_classes(game: Game, s: ConditionalProfile, i: int) -> dict[Profile, tuple[int, ...]]:
    """Points fixed by everyone but ``i``, grouped by ``a_{-i}``.

    Maps each ``a_{-i}`` with a nonempty class to the actions ``a_i`` completing
    it. A deviation of ``i`` picks at most one point per class, and can pick
    none only when the class misses some action.
    """
    classes: dict[Profile, list[int]] = {}
    for a in residual_fixed_set(game, s, (i,)):
        classes.setdefault(drop(a, i), []).append(a[i])
    return {o: tuple(xs) for o, xs in classes.items()}


def best_unilateral_deviation_value(
    game: Game, s: ConditionalProfile, i: int, mode: SemanticsMode = DOMINANT_ZERO
) -> tuple[Fraction, ConditionalStrategy | None]:
    """Best ``U_i`` player ``i`` can reach by replacing their table.

    Returns the value and a table attaining it, or ``(0, None)`` when every
    replacement ends in disagreement.
    """
    _require_zero(mode, "the class-selection oracle")
    m = game.sizes[i]
    classes = residual_classes(game, s, i)
    dominant = mode.agreement is Agreement.DOMINANT
    points = {o: [(x, game.payoff(insert(o, i, x))) for x in xs] for o, xs in classes.items()}

    best_value, best = None, None
    for o, options in points.items():
        for x, ua in options:
            if best_value is not None and ua[i] <= best_value:
                continue
            choice = {o: x}
            for o2, options2 in points.items():
                if o2 == o:
                    continue
                if len(options2) < m:
                    choice[o2] = min(set(range(m)) - {y for y, _ in options2})
                    continue
                if not dominant:
                    break
                fallback = next((y for y, v in options2 if pareto_dominates_weakly(ua, v)), None)
                if fallback is None:
                    break
                choice[o2] = fallback
            else:
                best_value, best = ua[i], choice
    if best is None:
        return Fraction(0), None
    table = [best.get(o, 0) for o in game.opponent_profiles(i)]
    return best_value, ConditionalStrategy.for_game(game, i, table)


def iter_strategies(game: Game, i: int) -> Iterator[ConditionalStrategy]:
    """Every table of player ``i``, lexicographically."""
    k = len(game.opponent_profiles(i))
    for table in itertools.product(range(game.sizes[i]), repeat=k):
        yield ConditionalStrategy.for_game(game, i, table)


def brute_force_best_deviation(
    game: Game, s: ConditionalProfile, i: int, mode: SemanticsMode = DOMINANT_ZERO,
    budget: int | None = None,
) -> tuple[Fraction, ConditionalStrategy]:
    """Enumerate all of ``S_i``; first table reaching the maximum wins ties."""
    budget = default_budget(DEVIATION_BUDGET) if budget is None else budget
    size = strategy_space_size(game, i)
    if size > budget:
        raise BudgetExceeded(size, budget)
    best_value, best = None, None
    for st in iter_strategies(game, i):
        value = classify(game, s.with_strategy(st), mode).payoff[i]
        if best_value is None or value > best_value:
            best_value, best = value, st
    return best_value, best


def brute_force_deviation_value(
    game: Game, s: ConditionalProfile, i: int, mode: SemanticsMode = DOMINANT_ZERO,
    budget: int | None = None,
) -> Fraction:
    return brute_force_best_deviation(game, s, i, mode, budget)[0]


def _apply(s: ConditionalProfile, strategies: Iterable[ConditionalStrategy]) -> ConditionalProfile:
    for st in strategies:
        s = s.with_strategy(st)
    return s


def _deviation(game, s, players, strategies, mode, base=None) -> Deviation:
    if base is None:
        base = classify(game, s, mode).payoff
    report = classify(game, _apply(s, strategies), mode)
    gains = tuple(report.payoff[j] - base[j] for j in players)
    return Deviation(tuple(players), tuple(strategies), report.dominant_point, report.payoff, gains)


def is_cse(
    game: Game, s: ConditionalProfile, mode: SemanticsMode = DOMINANT_ZERO,
    budget: int | None = None,
) -> DeviationCertificate:
    """Check every player for a strictly profitable unilateral deviation."""
    payoff = classify(game, s, mode).payoff
    for i in range(game.n):
        if mode.disagreement is Disagreement.ZERO:
            value, witness = best_unilateral_deviation_value(game, s, i, mode)
        else:
            value, witness = brute_force_best_deviation(game, s, i, mode, budget)
        if value > payoff[i]:
            dev = _deviation(game, s, (i,), (witness,), mode, payoff)
            return DeviationCertificate(Verdict.DEVIATION_FOUND, mode, payoff, dev, i + 1)
    return DeviationCertificate(Verdict.NO_PROFITABLE_DEVIATION, mode, payoff, None, game.n)


def coalition_deviation_exists(
    game: Game, s: ConditionalProfile, coalition: Sequence[int],
    mode: SemanticsMode = DOMINANT_ZERO, base: PayoffVector | None = None,
) -> Deviation | None:
    """Find joint tables for ``coalition`` making every member strictly better off.

    Candidate agreement points are the profiles fixed by the non-members that
    strictly improve every member. For each candidate the coalition must fix
    it and break every other residual fixed point (under ``DOMINANT`` those
    weakly dominated by the candidate may stay).
    """
    _require_zero(mode, "coalition search")
    coalition = tuple(sorted(set(coalition)))
    if not coalition:
        raise ValueError("coalition must be nonempty")
    if base is None:
        base = classify(game, s, mode).payoff
    residual = residual_fixed_set(game, s, coalition)
    dominant = mode.agreement is Agreement.DOMINANT
    domains = {}
    for target in residual:
        ut = game.payoff(target)
        if not all(ut[j] > base[j] for j in coalition):
            continue
        assignment = {(j, drop(target, j)): target[j] for j in coalition}
        constraints = []
        for a in residual:
            if a == target or (dominant and pareto_dominates_weakly(ut, game.payoff(a))):
                continue
            clause = _csp.Clause(tuple(((j, drop(a, j)), a[j]) for j in coalition))
            constraints.append(clause)
            for var, _ in clause.literals:
                domains[var] = game.sizes[var[0]]
        solution = _csp.solve(constraints, assignment, domains)
        if solution is None:
            continue
        strategies = tuple(
            ConditionalStrategy.for_game(
                game, j, [solution.get((j, o), 0) for o in game.opponent_profiles(j)]
            )
            for j in coalition
        )
        return _deviation(game, s, coalition, strategies, mode, base)
    return None


def coalitions(n: int) -> Iterator[tuple[int, ...]]:
    """Nonempty coalitions by increasing size."""
    for size in range(1, n + 1):
        yield from itertools.combinations(range(n), size)


def is_strong_ce(
    game: Game, s: ConditionalProfile, mode: SemanticsMode = DOMINANT_ZERO
) -> DeviationCertificate:
    """Check all ``2**n - 1`` coalitions for a strictly profitable joint deviation."""
    _require_zero(mode, "strong equilibrium check")
    payoff = classify(game, s, mode).payoff
    checked = 0
    for c in coalitions(game.n):
        checked += 1
        dev = coalition_deviation_exists(game, s, c, mode, payoff)
        if dev is not None:
            return DeviationCertificate(Verdict.DEVIATION_FOUND, mode, payoff, dev, checked)
    return DeviationCertificate(Verdict.NO_PROFITABLE_DEVIATION, mode, payoff, None, checked)


def profile_space_size(game: Game) -> int:
    total = 1
    for i in range(game.n):
        total *= strategy_space_size(game, i)
    return total


def iter_profiles(game: Game, budget: int | None = None) -> Iterator[ConditionalProfile]:
    """Every conditional profile, player 0's table varying slowest."""
    budget = default_budget(ENUMERATION_BUDGET) if budget is None else budget
    size = profile_space_size(game)
    if size > budget:
        raise BudgetExceeded(size, budget)
    spaces = [list(iter_strategies(game, i)) for i in range(game.n)]
    for combo in itertools.product(*spaces):
        yield ConditionalProfile(combo)


def enumerate_cse(
    game: Game, mode: SemanticsMode = DOMINANT_ZERO, budget: int | None = None
) -> list[tuple[ConditionalProfile, PayoffVector]]:
    """All conditional equilibria of a small game with their payoffs."""
    out = []
    for s in iter_profiles(game, budget):
        cert = is_cse(game, s, mode)
        if cert.holds:
            out.append((s, cert.payoff))
    return out


@dataclass(frozen=True)
class StrongScan:
    profiles: int
    strong: tuple[ConditionalProfile, ...]
    failures: tuple[tuple[ConditionalProfile, Deviation], ...] = ()


def scan_strong_ce(
    game: Game, mode: SemanticsMode = DOMINANT_ZERO, budget: int | None = None,
    keep_failures: bool = False,
) -> StrongScan:
    """Run :func:`is_strong_ce` on every conditional profile."""
    count, strong, failures = 0, [], []
    for s in iter_profiles(game, budget):
        count += 1
        cert = is_strong_ce(game, s, mode)
        if cert.holds:
            strong.append(s)
        elif keep_failures:
            failures.append((s, cert.deviation))
    return StrongScan(count, tuple(strong), tuple(failures))
