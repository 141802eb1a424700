"""Finite normal-form games with exact rational payoffs.

Players are indexed ``0..n-1`` and actions ``0..m_i-1``. An action profile is a
tuple of action indices in player order. Profiles are enumerated
lexicographically with the last player's action varying fastest, which is also
the order of the flat payoff table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ArityMismatch, NegativePayoff, ParseError

Profile = tuple[int, ...]
PayoffVector = tuple[Fraction, ...]


def as_rational(value) -> Fraction:
    """Exact conversion of ints, Fractions and ``"p/q"`` strings.

    Floats are rejected: they would silently smuggle rounding into tie-breaks.
    """
    if isinstance(value, bool):
        raise ParseError(f"boolean {value!r} is not a payoff")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {value!r} as a rational") from exc
    raise ParseError(f"unsupported payoff type {type(value).__name__}")


def format_rational(q: Fraction) -> int | str:
    """Integers stay integers, everything else becomes ``"p/q"``."""
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def drop(profile: Sequence[int], i: int) -> Profile:
    return tuple(profile[:i]) + tuple(profile[i + 1:])


def insert(opponents: Sequence[int], i: int, action: int) -> Profile:
    return tuple(opponents[:i]) + (action,) + tuple(opponents[i:])


def replace(profile: Sequence[int], i: int, action: int) -> Profile:
    return tuple(profile[:i]) + (action,) + tuple(profile[i + 1:])


@dataclass(frozen=True)
class Game:
    """An ``n``-player game, ``n >= 2``, with nonnegative exact payoffs.

    ``payoffs[k]`` is the payoff vector of the ``k``-th profile in
    last-player-fastest order.
    """

    actions: tuple[tuple[str, ...], ...]
    payoffs: tuple[PayoffVector, ...]
    players: tuple[str, ...] = ()
    title: str = ""

    def __post_init__(self):
        actions = tuple(tuple(str(a) for a in acts) for acts in self.actions)
        n = len(actions)
        if n < 2:
            raise ArityMismatch(f"a game needs at least two players, got {n}")
        if any(len(acts) == 0 for acts in actions):
            raise ArityMismatch("every player needs at least one action")
        players = tuple(self.players) or tuple(f"P{i + 1}" for i in range(n))
        if len(players) != n:
            raise ArityMismatch(f"{len(players)} player names for {n} action sets")
        size = 1
        for acts in actions:
            size *= len(acts)
        if len(self.payoffs) != size:
            raise ArityMismatch(f"expected {size} payoff vectors, got {len(self.payoffs)}")
        table = []
        for k, (profile, vec) in enumerate(
            zip(itertools.product(*(range(len(a)) for a in actions)), self.payoffs)
        ):
            if len(vec) != n:
                raise ArityMismatch(f"payoff vector {k} has length {len(vec)}, expected {n}")
            row = tuple(as_rational(x) for x in vec)
            for i, x in enumerate(row):
                if x < 0:
                    raise NegativePayoff(profile, i, x)
            table.append(row)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "payoffs", tuple(table))

    @classmethod
    def from_function(cls, actions, payoff, players=(), title=""):
        """Build a game by calling ``payoff(profile)`` on every profile."""
        actions = tuple(tuple(a) for a in actions)
        profiles = itertools.product(*(range(len(a)) for a in actions))
        return cls(actions, tuple(tuple(payoff(p)) for p in profiles), players, title)

    @property
    def n(self) -> int:
        return len(self.actions)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.actions)

    @cached_property
    def profiles(self) -> tuple[Profile, ...]:
        return tuple(itertools.product(*(range(m) for m in self.sizes)))

    @cached_property
    def _index(self) -> dict[Profile, int]:
        return {p: k for k, p in enumerate(self.profiles)}

    def index(self, profile: Sequence[int]) -> int:
        return self._index[tuple(profile)]

    def payoff(self, profile: Sequence[int]) -> PayoffVector:
        return self.payoffs[self._index[tuple(profile)]]

    def u(self, i: int, profile: Sequence[int]) -> Fraction:
        return self.payoffs[self._index[tuple(profile)]][i]

    def opponent_profiles(self, i: int) -> tuple[Profile, ...]:
        """All ``a_{-i}`` in ascending-player, last-fastest order."""
        return tuple(itertools.product(*(range(m) for j, m in enumerate(self.sizes) if j != i)))

    def max_payoff(self, i: int) -> Fraction:
        return max(vec[i] for vec in self.payoffs)

    def profile_names(self, profile: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.actions[i][a] for i, a in enumerate(profile))

    def parse_profile(self, names: Sequence[str] | str) -> Profile:
        """Map action names (or a comma-separated string) to a profile."""
        if isinstance(names, str):
            names = [x.strip() for x in names.split(",")]
        if len(names) != self.n:
            raise ArityMismatch(f"profile needs {self.n} actions, got {len(names)}")
        out = []
        for i, name in enumerate(names):
            try:
                out.append(self.actions[i].index(name))
            except ValueError:
                raise ParseError(f"unknown action {name!r} for player {self.players[i]}") from None
        return tuple(out)

    def player_index(self, player: int | str) -> int:
        if isinstance(player, int):
            return player
        return self.players.index(player)

    def shifted_nonnegative(self) -> "Game":
        """Add a per-player constant so each player's minimum payoff is 0.

        This changes the game: disagreement pays 0, so a shift moves every
        payoff relative to the disagreement point.
        """
        mins = [min(vec[i] for vec in self.payoffs) for i in range(self.n)]
        table = tuple(tuple(x - mins[i] for i, x in enumerate(vec)) for vec in self.payoffs)
        return Game(self.actions, table, self.players, self.title)

    @classmethod
    def with_shift(cls, actions, payoffs, players=(), title=""):
        """Like the constructor but accepts negative payoffs by shifting them."""
        mins = [min(as_rational(vec[i]) for vec in payoffs) for i in range(len(actions))]
        shift = [-m if m < 0 else 0 for m in mins]
        table = tuple(tuple(as_rational(x) + shift[i] for i, x in enumerate(vec)) for vec in payoffs)
        return cls(actions, table, players, title)


def best_responses(game: Game, i: int, a_minus_i: Sequence[int]) -> tuple[int, ...]:
    """Actions of ``i`` maximising ``u_i(., a_minus_i)``, ascending."""
    values = [game.u(i, insert(a_minus_i, i, x)) for x in range(game.sizes[i])]
    best = max(values)
    return tuple(x for x, v in enumerate(values) if v == best)


def pure_maximin(game: Game, i: int) -> tuple[Fraction, tuple[int, ...]]:
    """Pure-action maximin value of ``i`` and every action attaining it."""
    opponents = game.opponent_profiles(i)
    worst = [min(game.u(i, insert(o, i, x)) for o in opponents) for x in range(game.sizes[i])]
    value = max(worst)
    return value, tuple(x for x, w in enumerate(worst) if w == value)


def pareto_dominates_weakly(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    if len(u) != len(v):
        raise ArityMismatch("payoff vectors of different length")
    return all(x >= y for x, y in zip(u, v))


def is_pareto_optimal(game: Game, profile: Sequence[int]) -> bool:
    """No profile weakly improves everyone and strictly improves someone."""
    u = game.payoff(profile)
    return not any(
        pareto_dominates_weakly(v, u) and v != u for v in game.payoffs
    )


def pareto_optimal_with_max_player(game: Game) -> tuple[Profile, int]:
    """A Pareto-optimal profile at which some player gets their global maximum.

    Takes the lowest player ``i``; among profiles maximising ``u_i`` keeps those
    that are lexicographically best on ``(u_i, u_0, u_1, ...)`` with ``i``
    removed from the tail. Any profile dominating the survivor would be
    lexicographically larger, so the survivor is Pareto optimal.
    """
    i = 0
    order = [i] + [j for j in range(game.n) if j != i]

    def key(vec):
        return tuple(vec[j] for j in order)

    best = max(key(vec) for vec in game.payoffs)
    for profile, vec in zip(game.profiles, game.payoffs):
        if key(vec) == best:
            return profile, i
    raise AssertionError("unreachable")


def pure_nash_equilibria(game: Game) -> list[Profile]:
    return [
        a for a in game.profiles
        if all(a[i] in best_responses(game, i, drop(a, i)) for i in range(game.n))
    ]


def describe(game: Game) -> str:
    """Plain-text payoff listing."""
    lines = [game.title or "game", "players: " + ", ".join(game.players)]
    for profile, vec in zip(game.profiles, game.payoffs):
        lines.append(
            f"  ({','.join(game.profile_names(profile))}) -> "
            + ", ".join(str(x) for x in vec)
        )
    return "\n".join(lines)


def iter_payoffs(game: Game) -> Iterable[tuple[Profile, PayoffVector]]:
    return zip(game.profiles, game.payoffs)
