"""Conditional strategies, fixed points and the induced payoff ``U``.

A conditional strategy of player ``i`` is a total table from opponent profiles
``a_{-i}`` to actions of ``i``. A profile of such tables agrees on an action
profile ``a`` when every table maps ``a_{-i}`` to ``a_i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ArityMismatch
from .game import Game, PayoffVector, Profile, best_responses, drop, pareto_dominates_weakly


class Agreement(str, enum.Enum):
    DOMINANT = "dominant"
    UNIQUE = "unique"


class Disagreement(str, enum.Enum):
    ZERO = "zero"
    AVERAGE = "average"


@dataclass(frozen=True)
class SemanticsMode:
    """How fixed points turn into payoffs.

    ``DOMINANT``: a profile is an agreement when one fixed point weakly Pareto
    dominates every fixed point. ``UNIQUE``: when there is exactly one fixed
    point. Disagreements pay zero (``ZERO``) or the average payoff over the
    disagreement set ``D(s)`` (``AVERAGE``).
    """

    agreement: Agreement = Agreement.DOMINANT
    disagreement: Disagreement = Disagreement.ZERO

    def __post_init__(self):
        object.__setattr__(self, "agreement", Agreement(self.agreement))
        object.__setattr__(self, "disagreement", Disagreement(self.disagreement))

    def __str__(self):
        return f"{self.agreement.value}+{self.disagreement.value}"


DOMINANT_ZERO = SemanticsMode(Agreement.DOMINANT, Disagreement.ZERO)
UNIQUE_ZERO = SemanticsMode(Agreement.UNIQUE, Disagreement.ZERO)
DOMINANT_AVERAGE = SemanticsMode(Agreement.DOMINANT, Disagreement.AVERAGE)
UNIQUE_AVERAGE = SemanticsMode(Agreement.UNIQUE, Disagreement.AVERAGE)
ALL_MODES = (DOMINANT_ZERO, UNIQUE_ZERO, DOMINANT_AVERAGE, UNIQUE_AVERAGE)


def _radix_index(digits: Sequence[int], radices: Sequence[int]) -> int:
    k = 0
    for d, r in zip(digits, radices):
        k = k * r + d
    return k


@dataclass(frozen=True)
class ConditionalStrategy:
    """Dense lookup table ``A_{-i} -> A_i``.

    ``table[k]`` is the response to the ``k``-th opponent profile in
    ``Game.opponent_profiles(owner)`` order; ``radices`` are the opponents'
    action counts.
    """

    owner: int
    table: tuple[int, ...]
    radices: tuple[int, ...]
    num_actions: int

    def __post_init__(self):
        size = 1
        for r in self.radices:
            size *= r
        if len(self.table) != size:
            raise ArityMismatch(f"table has {len(self.table)} entries, expected {size}")
        if any(not 0 <= x < self.num_actions for x in self.table):
            raise ArityMismatch("table entry outside the owner's action set")

    @classmethod
    def for_game(cls, game: Game, i: int, table: Sequence[int]) -> "ConditionalStrategy":
        return cls(i, tuple(table), drop(game.sizes, i), game.sizes[i])

    @classmethod
    def from_function(cls, game: Game, i: int, rule: Callable[[Profile], int]):
        """Tabulate ``rule(a_minus_i)`` over every opponent profile."""
        return cls.for_game(game, i, [rule(o) for o in game.opponent_profiles(i)])

    def __call__(self, a_minus_i: Sequence[int]) -> int:
        return self.table[_radix_index(a_minus_i, self.radices)]

    def respond(self, profile: Sequence[int]) -> int:
        """Response to the opponents' part of a full profile."""
        i = self.owner
        return self.table[_radix_index(tuple(profile[:i]) + tuple(profile[i + 1:]), self.radices)]

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1


class ConditionalProfile(tuple):
    """One :class:`ConditionalStrategy` per player, in player order."""

    def __new__(cls, strategies: Sequence[ConditionalStrategy]):
        strategies = tuple(strategies)
        for i, s in enumerate(strategies):
            if s.owner != i:
                raise ArityMismatch(f"strategy at position {i} belongs to player {s.owner}")
        return super().__new__(cls, strategies)

    def with_strategy(self, strategy: ConditionalStrategy) -> "ConditionalProfile":
        items = list(self)
        items[strategy.owner] = strategy
        return ConditionalProfile(items)

    def __call__(self, profile: Sequence[int]) -> Profile:
        return tuple(s.respond(profile) for s in self)


@dataclass(frozen=True)
class AgreementReport:
    fixed_points: tuple[Profile, ...]
    is_agreement: bool
    dominant_point: Profile | None
    payoff: PayoffVector
    disagreement_set: tuple[Profile, ...] | None = None


def check_profile(game: Game, s: ConditionalProfile) -> None:
    if len(s) != game.n:
        raise ArityMismatch(f"profile has {len(s)} strategies for {game.n} players")
    for i, st in enumerate(s):
        if st.radices != drop(game.sizes, i) or st.num_actions != game.sizes[i]:
            raise ArityMismatch(f"strategy of player {i} does not fit the game")


def fixed_points(game: Game, s: ConditionalProfile) -> tuple[Profile, ...]:
    """Every ``a`` with ``s(a) == a``, found by scanning all profiles."""
    return tuple(a for a in game.profiles if all(st.respond(a) == a[st.owner] for st in s))


def disagreement_set(game: Game, s: ConditionalProfile, fps=None) -> tuple[Profile, ...]:
    """``D(s)``: the fixed points if any, else all points ``(s_i(a_{-i}), a_{-i})``.

    A set, so points reached from several ``(i, a_{-i})`` pairs count once.
    """
    if fps is None:
        fps = fixed_points(game, s)
    if fps:
        return tuple(fps)
    points = set()
    for st in s:
        i = st.owner
        for o in game.opponent_profiles(i):
            points.add(o[:i] + (st(o),) + o[i:])
    return tuple(sorted(points))


def average_payoff(game: Game, points: Sequence[Profile]) -> PayoffVector:
    total = [Fraction(0)] * game.n
    for a in points:
        for i, x in enumerate(game.payoff(a)):
            total[i] += x
    return tuple(t / len(points) for t in total)


def classify(game: Game, s: ConditionalProfile, mode: SemanticsMode = DOMINANT_ZERO) -> AgreementReport:
    fps = fixed_points(game, s)
    dominant = None
    if mode.agreement is Agreement.UNIQUE:
        if len(fps) == 1:
            dominant = fps[0]
    else:
        vectors = [game.payoff(a) for a in fps]
        for a, u in zip(fps, vectors):
            if all(pareto_dominates_weakly(u, v) for v in vectors):
                dominant = a
                break
    if dominant is not None:
        return AgreementReport(fps, True, dominant, game.payoff(dominant))
    if mode.disagreement is Disagreement.ZERO:
        return AgreementReport(fps, False, None, (Fraction(0),) * game.n)
    d = disagreement_set(game, s, fps)
    return AgreementReport(fps, False, None, average_payoff(game, d), d)


def induced_payoff(game: Game, s: ConditionalProfile, mode: SemanticsMode = DOMINANT_ZERO) -> PayoffVector:
    return classify(game, s, mode).payoff


def strategy_space_size(game: Game, i: int) -> int:
    exponent = 1
    for j, m in enumerate(game.sizes):
        if j != i:
            exponent *= m
    return game.sizes[i] ** exponent


def constant_strategy(game: Game, i: int, action: int) -> ConditionalStrategy:
    if not 0 <= action < game.sizes[i]:
        raise ArityMismatch(f"player {i} has no action {action}")
    return ConditionalStrategy.for_game(game, i, [action] * len(game.opponent_profiles(i)))


def constant_profile(game: Game, profile: Sequence[int]) -> ConditionalProfile:
    return ConditionalProfile(constant_strategy(game, i, a) for i, a in enumerate(profile))


def best_response_strategy(game: Game, i: int) -> ConditionalStrategy:
    """Lowest-index best response to every opponent profile."""
    return ConditionalStrategy.from_function(game, i, lambda o: best_responses(game, i, o)[0])
