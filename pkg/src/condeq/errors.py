"""Exception hierarchy. Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class CSEError(Exception):
    code = "error"


class ParseError(CSEError, ValueError):
    code = "parse_error"

    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class NegativePayoff(CSEError, ValueError):
    code = "negative_payoff"

    def __init__(self, profile, player, value):
        super().__init__(f"payoff {value} of player {player} at profile {profile} is negative")
        self.profile = profile
        self.player = player
        self.value = value


class ArityMismatch(CSEError, ValueError):
    code = "arity_mismatch"


class UnsupportedNfgFeature(CSEError, ValueError):
    code = "unsupported_nfg_feature"


class NotIndividuallyRational(CSEError):
    """Target gives some player less than their pure maximin payoff."""

    code = "not_individually_rational"

    def __init__(self, player, maximin, value, player_name=None):
        label = player_name if player_name is not None else f"player index {player}"
        super().__init__(f"{label} gets {value} at target, below maximin {maximin}")
        self.player = player
        self.maximin = maximin
        self.value = value
        self.player_name = player_name


class WrongPlayerCount(CSEError, ValueError):
    code = "wrong_player_count"


class NotTwoPlayers(WrongPlayerCount):
    code = "not_two_players"


class NotThreePlayers(WrongPlayerCount):
    code = "not_three_players"


class TooFewPlayers(WrongPlayerCount):
    code = "too_few_players"


class ActionSetTooSmall(CSEError, ValueError):
    code = "action_set_too_small"

    def __init__(self, player):
        super().__init__(f"player {player} needs at least two actions")
        self.player = player


class NoDoubleMaxProfile(CSEError):
    code = "no_double_max_profile"


class SearchExhausted(CSEError):
    code = "search_exhausted"


class UnsupportedSemantics(CSEError, ValueError):
    code = "unsupported_semantics"


class BudgetExceeded(CSEError):
    code = "budget_exceeded"

    def __init__(self, size, budget):
        super().__init__(f"search space of size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class UnknownCell(CSEError, KeyError):
    code = "unknown_cell"
