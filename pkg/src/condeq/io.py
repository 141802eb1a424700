"""JSON file formats and the legacy ``.nfg`` payoff importer.

Game file::

    {
      "title": "prisoners dilemma",
      "players": ["P1", "P2"],
      "actions": [["C", "D"], ["C", "D"]],
      "payoffs": [
        [3, 3],
        [0, 4],
        [4, 0],
        [1, 1]
      ]
    }

``payoffs[k]`` belongs to the ``k``-th profile with the last player's action
varying fastest. Payoffs are integers or ``"p/q"`` strings.

Profile file::

    {"strategies": [
      {"player": "P1", "entries": [{"given": ["C"], "play": "C"}, ...]},
      ...
    ]}

``given`` lists the other players' actions in ascending player order.
"""

from __future__ import annotations

import json
import shlex
from fractions import Fraction
from typing import Any

from . import __version__
from .conditional import ConditionalProfile, ConditionalStrategy, SemanticsMode
from .deviation import Deviation, DeviationCertificate
from .errors import ArityMismatch, ParseError, UnsupportedNfgFeature
from .game import Game, as_rational, format_rational
from .mixed import FiniteSupportMeasure, PartitionSpec, SimpleConditionalMixedStrategy


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc


def _string_list(value, field) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError("expected a list of strings", field=field)
    return value


def _payoff_value(x, field):
    if isinstance(x, float):
        raise ParseError("floats are not exact; use an integer or a \"p/q\" string", field=field)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"bad payoff {x!r}", field=field)
    return as_rational(x)


def game_from_dict(data: dict) -> Game:
    if not isinstance(data, dict):
        raise ParseError("game file must be a JSON object")
    for key in ("players", "actions", "payoffs"):
        if key not in data:
            raise ParseError("missing field", field=key)
    players = _string_list(data["players"], "players")
    actions = data["actions"]
    if not isinstance(actions, list):
        raise ParseError("expected a list of action lists", field="actions")
    actions = [_string_list(a, f"actions[{i}]") for i, a in enumerate(actions)]
    if len(actions) != len(players):
        raise ArityMismatch(f"{len(players)} players but {len(actions)} action lists")
    payoffs = data["payoffs"]
    if not isinstance(payoffs, list):
        raise ParseError("expected a list of payoff vectors", field="payoffs")
    table = []
    for k, vec in enumerate(payoffs):
        if not isinstance(vec, list):
            raise ParseError("expected a payoff vector", field=f"payoffs[{k}]")
        table.append(tuple(_payoff_value(x, f"payoffs[{k}]") for x in vec))
    title = data.get("title", "")
    if not isinstance(title, str):
        raise ParseError("expected a string", field="title")
    return Game(tuple(map(tuple, actions)), tuple(table), tuple(players), title)


def parse_game(text: str) -> Game:
    return game_from_dict(_load_json(text))


def game_to_dict(game: Game) -> dict:
    data = {}
    if game.title:
        data["title"] = game.title
    data["players"] = list(game.players)
    data["actions"] = [list(a) for a in game.actions]
    data["payoffs"] = [[format_rational(x) for x in vec] for vec in game.payoffs]
    return data


def serialize_game(game: Game) -> str:
    """Canonical text: one payoff vector per line, trailing newline."""
    data = game_to_dict(game)
    lines = ["{"]
    for key in ("title", "players", "actions"):
        if key in data:
            lines.append(f"  {json.dumps(key)}: {json.dumps(data[key])},")
    lines.append('  "payoffs": [')
    rows = [f"    {json.dumps(vec)}" for vec in data["payoffs"]]
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def profile_to_dict(game: Game, s: ConditionalProfile) -> dict:
    strategies = []
    for st in s:
        i = st.owner
        others = [j for j in range(game.n) if j != i]
        entries = [
            {"given": [game.actions[j][x] for j, x in zip(others, o)], "play": game.actions[i][st(o)]}
            for o in game.opponent_profiles(i)
        ]
        strategies.append({"player": game.players[i], "entries": entries})
    return {"strategies": strategies}


def profile_from_dict(game: Game, data: dict) -> ConditionalProfile:
    if not isinstance(data, dict) or not isinstance(data.get("strategies"), list):
        raise ParseError("expected an object with a strategies list", field="strategies")
    items = data["strategies"]
    if len(items) != game.n:
        raise ArityMismatch(f"{len(items)} strategies for {game.n} players")
    out = []
    for i, item in enumerate(items):
        field = f"strategies[{i}]"
        if not isinstance(item, dict) or "entries" not in item:
            raise ParseError("expected an object with entries", field=field)
        if item.get("player", game.players[i]) != game.players[i]:
            raise ParseError(f"expected player {game.players[i]!r}", field=field)
        others = [j for j in range(game.n) if j != i]
        table: dict[tuple[int, ...], int] = {}
        for e, entry in enumerate(item["entries"]):
            efield = f"{field}.entries[{e}]"
            if not isinstance(entry, dict) or "given" not in entry or "play" not in entry:
                raise ParseError("entry needs given and play", field=efield)
            given = _string_list(entry["given"], efield + ".given")
            if len(given) != len(others):
                raise ArityMismatch(f"{efield}: given has {len(given)} actions, expected {len(others)}")
            try:
                key = tuple(game.actions[j].index(x) for j, x in zip(others, given))
                play = game.actions[i].index(entry["play"])
            except ValueError:
                raise ParseError("unknown action name", field=efield) from None
            if key in table:
                raise ParseError("opponent profile listed twice", field=efield)
            table[key] = play
        missing = [o for o in game.opponent_profiles(i) if o not in table]
        if missing:
            raise ParseError(f"{len(missing)} opponent profiles not covered", field=field)
        out.append(ConditionalStrategy.for_game(game, i, [table[o] for o in game.opponent_profiles(i)]))
    return ConditionalProfile(out)


def parse_profile(game: Game, text: str) -> ConditionalProfile:
    return profile_from_dict(game, _load_json(text))


def sigma_from_dict(data: dict) -> SimpleConditionalMixedStrategy:
    """``{"owner": 0, "actions": [...], "cells": [...], "distributions": [[...], ...]}``."""
    if not isinstance(data, dict):
        raise ParseError("sigma file must be a JSON object")
    for key in ("actions", "cells", "distributions"):
        if key not in data:
            raise ParseError("missing field", field=key)
    actions = _string_list(data["actions"], "actions")
    cells = _string_list(data["cells"], "cells")
    dists = data["distributions"]
    if not isinstance(dists, list):
        raise ParseError("expected a list of distributions", field="distributions")
    dists = [
        tuple(_payoff_value(x, f"distributions[{l}]") for x in d) if isinstance(d, list)
        else _payoff_value(d, f"distributions[{l}]")
        for l, d in enumerate(dists)
    ]
    owner = data.get("owner", 0)
    return SimpleConditionalMixedStrategy(owner, tuple(actions), PartitionSpec(tuple(cells)), tuple(dists))


def parse_sigma(text: str) -> SimpleConditionalMixedStrategy:
    return sigma_from_dict(_load_json(text))


def measure_to_dict(mu: FiniteSupportMeasure) -> dict:
    return {
        "cells": list(mu.partition.labels),
        "atoms": [
            {"table": [mu.actions[a] for a in atom], "weight": format_rational(w)}
            for atom, w in mu.items()
        ],
    }


def import_nfg(text: str) -> Game:
    """Read the payoff-list variant of the legacy ``.nfg`` format.

    Header ``NFG 1 R "title" { "P1" "P2" } { 2 2 }`` (or strategy names in
    nested braces), then one payoff per player per profile with the first
    player's action varying fastest. Outcome-based files are rejected.
    """
    try:
        tokens = shlex.split(text, comments=False, posix=True)
    except ValueError as exc:
        raise ParseError(f"cannot tokenize: {exc}") from exc
    if len(tokens) < 4 or tokens[0] != "NFG" or tokens[1] != "1" or tokens[2] not in ("R", "D"):
        raise ParseError("expected header 'NFG 1 R' or 'NFG 1 D'")
    title = tokens[3]
    pos = 4

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ParseError(f"expected {tok!r} at token {pos}")
        pos += 1

    def read_block():
        nonlocal pos
        expect("{")
        items = []
        while pos < len(tokens) and tokens[pos] != "}":
            if tokens[pos] == "{":
                items.append(read_block())
            else:
                items.append(tokens[pos])
                pos += 1
        expect("}")
        return items

    players = read_block()
    if any(isinstance(p, list) for p in players):
        raise ParseError("player names must be strings")
    strategies = read_block()
    if all(isinstance(x, list) for x in strategies):
        actions = [tuple(x) for x in strategies]
    elif all(isinstance(x, str) for x in strategies):
        try:
            counts = [int(x) for x in strategies]
        except ValueError:
            raise ParseError("strategy counts must be integers") from None
        actions = [tuple(str(k + 1) for k in range(c)) for c in counts]
    else:
        raise ParseError("mixed strategy block")
    if len(actions) != len(players):
        raise ArityMismatch(f"{len(players)} players but {len(actions)} strategy sets")
    if pos < len(tokens) and tokens[pos] != "{" and not _is_number(tokens[pos]):
        pos += 1  # optional comment string
    if pos < len(tokens) and tokens[pos] == "{":
        raise UnsupportedNfgFeature("outcome-based .nfg files are not supported")
    numbers = tokens[pos:]
    n = len(players)
    if n < 2:
        raise ArityMismatch(f"a game needs at least two players, got {n}")
    sizes = [len(a) for a in actions]
    total = 1
    for m in sizes:
        total *= m
    if len(numbers) != total * n:
        raise ArityMismatch(f"expected {total * n} payoffs, got {len(numbers)}")
    values = [_nfg_number(x) for x in numbers]
    legacy = {}
    for k in range(total):
        digits, rest = [], k
        for m in sizes:
            digits.append(rest % m)
            rest //= m
        legacy[tuple(digits)] = tuple(values[k * n:(k + 1) * n])
    return Game.from_function(actions, lambda p: legacy[tuple(p)], tuple(players), title)


def _is_number(token: str) -> bool:
    try:
        Fraction(token)
    except (ValueError, ZeroDivisionError):
        return False
    return True


def _nfg_number(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad payoff {token!r}") from None


def _rationals(vec):
    return [format_rational(x) for x in vec]


def mode_to_dict(mode: SemanticsMode) -> dict:
    return {"agreement": mode.agreement.value, "disagreement": mode.disagreement.value}


def deviation_to_dict(game: Game, s: ConditionalProfile, dev: Deviation) -> dict:
    deviated = dev.apply(s)
    full = profile_to_dict(game, deviated)["strategies"]
    return {
        "players": [game.players[j] for j in dev.players],
        "strategies": [full[j] for j in dev.players],
        "agreement_point": None if dev.point is None else list(game.profile_names(dev.point)),
        "payoff": _rationals(dev.payoff),
        "gains": _rationals(dev.gains),
    }


def certificate_to_dict(game: Game, s: ConditionalProfile, cert: DeviationCertificate) -> dict:
    out = {
        "verdict": cert.verdict.value,
        "mode": mode_to_dict(cert.mode),
        "payoff": _rationals(cert.payoff),
        "checked": cert.coalitions_checked,
    }
    if cert.deviation is not None:
        out["deviation"] = deviation_to_dict(game, s, cert.deviation)
    return out


def make_report(command: list[str], mode: SemanticsMode, result: dict, game: Game | None = None) -> dict:
    report = {"version": __version__, "command": list(command), "mode": mode_to_dict(mode)}
    if game is not None:
        report["game"] = game_to_dict(game)
    report["result"] = result
    return report
