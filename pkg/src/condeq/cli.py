"""Command-line interface.

Exit codes: 0 success, 2 a correctly computed negative answer (a profitable
deviation, a target below maximin, no double-max profile), 1 any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import io
from .conditional import DOMINANT_ZERO, SemanticsMode, classify
from .constructors import (
    ConstructionResult,
    build_existence,
    build_folk,
    build_general_2p,
    build_pareto3,
    build_strong,
    build_support_n4,
)
from .deviation import enumerate_cse, is_cse, is_strong_ce, scan_strong_ce
from .errors import CSEError, NoDoubleMaxProfile, NotIndividuallyRational
from .game import Game, format_rational
from .mixed import decompose, verify_roundtrip

NEGATIVE = (NotIndividuallyRational, NoDoubleMaxProfile)

COMMANDS = (
    "solve", "folk", "pareto3", "strong", "general2p", "support-n4",
    "verify", "verify-strong", "enumerate", "mixed-decompose",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="condeq", description="Conditional strategy equilibria.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--game", help="game file (JSON, or legacy .nfg)")
    parser.add_argument("--profile", help="profile file, or a report embedding one")
    parser.add_argument("--sigma", help="simple conditional mixed strategy file")
    parser.add_argument("--target", help="comma-separated action names")
    parser.add_argument("--mode", choices=("dominant", "unique"))
    parser.add_argument("--disagreement", choices=("zero", "average"))
    parser.add_argument("--budget", type=int, help="enumeration budget")
    parser.add_argument("--exhaustive", action="store_true", help="verify-strong: scan every profile")
    parser.add_argument("--prune", action="store_true", help="mixed-decompose: drop zero-weight atoms")
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("--out", help="write output here instead of stdout")
    return parser


def load_game(path: str) -> Game:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".nfg") or text.lstrip().startswith("NFG"):
        return io.import_nfg(text)
    return io.parse_game(text)


def _mode(args, default: SemanticsMode) -> SemanticsMode:
    return SemanticsMode(
        args.mode or default.agreement.value,
        args.disagreement or default.disagreement.value,
    )


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise CSEError(f"--{name} is required for {args.command}")


def _construction(game, args, result: ConstructionResult):
    mode = _mode(args, result.mode)
    cert = is_cse(game, result.profile, mode, args.budget)
    payload = {
        "theorem": result.theorem.value,
        "intended_point": None if result.intended_point is None
        else list(game.profile_names(result.intended_point)),
        "notes": _jsonable(result.notes),
        "profile": io.profile_to_dict(game, result.profile),
        "certificate": io.certificate_to_dict(game, result.profile, cert),
    }
    return mode, payload, (0 if cert.holds else 2)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "numerator") and not isinstance(value, (int, bool)):
        return format_rational(value)
    return value


def _load_profile(args):
    data = json.loads(Path(args.profile).read_text(encoding="utf-8"))
    if "result" in data and "game" in data:
        game = io.game_from_dict(data["game"])
        mode = SemanticsMode(data["mode"]["agreement"], data["mode"]["disagreement"])
        return game, io.profile_from_dict(game, data["result"]["profile"]), mode
    _require(args, "game")
    game = load_game(args.game)
    return game, io.profile_from_dict(game, data), DOMINANT_ZERO


def run(args) -> tuple[dict, int]:
    """Dispatch one command; returns ``(report, exit_code)``."""
    cmd = args.command
    game = None
    code = 0
    mode = _mode(args, DOMINANT_ZERO)
    if cmd in ("verify", "verify-strong") and args.profile:
        game, profile, embedded = _load_profile(args)
        mode = _mode(args, embedded)
    elif cmd != "mixed-decompose":
        _require(args, "game")
        game = load_game(args.game)

    if cmd == "solve":
        mode, result, code = _construction(game, args, build_existence(game))
    elif cmd == "folk":
        _require(args, "target")
        try:
            built = build_folk(game, game.parse_profile(args.target))
        except NotIndividuallyRational as exc:
            raise NotIndividuallyRational(exc.player, exc.maximin, exc.value, game.players[exc.player]) from None
        mode, result, code = _construction(game, args, built)
    elif cmd == "pareto3":
        mode, result, code = _construction(game, args, build_pareto3(game))
    elif cmd == "strong":
        built = build_strong(game)
        mode = _mode(args, built.mode)
        cert = is_strong_ce(game, built.profile, mode)
        result = {
            "theorem": built.theorem.value,
            "intended_point": list(game.profile_names(built.intended_point)),
            "notes": _jsonable(built.notes),
            "profile": io.profile_to_dict(game, built.profile),
            "certificate": io.certificate_to_dict(game, built.profile, cert),
        }
        code = 0 if cert.holds else 2
    elif cmd == "general2p":
        mode, result, code = _construction(game, args, build_general_2p(game, args.budget))
    elif cmd == "support-n4":
        _require(args, "target")
        mode, result, code = _construction(game, args, build_support_n4(game, game.parse_profile(args.target)))
    elif cmd == "verify":
        _require(args, "profile")
        cert = is_cse(game, profile, mode, args.budget)
        report = classify(game, profile, mode)
        result = {
            "profile": io.profile_to_dict(game, profile),
            "fixed_points": [list(game.profile_names(a)) for a in report.fixed_points],
            "certificate": io.certificate_to_dict(game, profile, cert),
        }
        code = 0 if cert.holds else 2
    elif cmd == "verify-strong":
        if args.exhaustive:
            scan = scan_strong_ce(game, mode, args.budget)
            result = {
                "profiles": scan.profiles,
                "strong": len(scan.strong),
                "summary": f"{len(scan.strong)} strong CE among {scan.profiles} profiles",
            }
        else:
            _require(args, "profile")
            cert = is_strong_ce(game, profile, mode)
            result = {
                "profile": io.profile_to_dict(game, profile),
                "certificate": io.certificate_to_dict(game, profile, cert),
            }
            code = 0 if cert.holds else 2
    elif cmd == "enumerate":
        found = enumerate_cse(game, mode, args.budget)
        result = {
            "count": len(found),
            "equilibria": [
                {
                    "agreement_point": _point_names(game, s, mode),
                    "payoff": [format_rational(x) for x in payoff],
                    "profile": io.profile_to_dict(game, s),
                }
                for s, payoff in found
            ],
        }
    elif cmd == "mixed-decompose":
        _require(args, "sigma")
        sigma = io.parse_sigma(Path(args.sigma).read_text(encoding="utf-8"))
        mu = decompose(sigma, prune=args.prune, budget=args.budget)
        result = {"measure": io.measure_to_dict(mu), "roundtrip": verify_roundtrip(sigma)}
        code = 0 if result["roundtrip"] else 1
    else:  # pragma: no cover - argparse restricts choices
        raise CSEError(f"unknown command {cmd}")
    return io.make_report(_argv_echo(args), mode, result, game), code


def _point_names(game, s, mode):
    point = classify(game, s, mode).dominant_point
    return None if point is None else list(game.profile_names(point))


def _argv_echo(args) -> list[str]:
    out = ["condeq", args.command]
    for key, value in sorted(vars(args).items()):
        if key == "command" or value in (None, False):
            continue
        out.append(f"--{key.replace('_', '-')}")
        if value is not True:
            out.append(str(value))
    return out


def render_text(report: dict) -> str:
    """Short human-readable rendering of a report."""
    res = report["result"]
    mode = report["mode"]
    lines = [f"command: {' '.join(report['command'][1:])}",
             f"mode: {mode['agreement']}+{mode['disagreement']}"]
    if "error" in res:
        lines.append(f"error [{res['error']['code']}]: {res['error']['message']}")
        return "\n".join(lines)
    if "intended_point" in res:
        point = res["intended_point"]
        lines.append(f"intended point: {'(' + ','.join(point) + ')' if point else 'none'}")
    if "profile" in res:
        for st in res["profile"]["strategies"]:
            cells = ", ".join(f"{','.join(e['given'])}->{e['play']}" for e in st["entries"])
            lines.append(f"  {st['player']}: {cells}")
    if "certificate" in res:
        cert = res["certificate"]
        lines.append(f"payoff: ({', '.join(map(str, cert['payoff']))})")
        lines.append(f"verdict: {cert['verdict']}")
        if "deviation" in cert:
            dev = cert["deviation"]
            lines.append(
                f"  deviators {','.join(dev['players'])} reach {dev['agreement_point']} "
                f"gaining ({', '.join(map(str, dev['gains']))})"
            )
    if "summary" in res:
        lines.append(res["summary"])
    if "count" in res:
        lines.append(f"{res['count']} conditional equilibria")
        for eq in res["equilibria"]:
            lines.append(f"  {eq['agreement_point']} -> ({', '.join(map(str, eq['payoff']))})")
    if "measure" in res:
        for atom in res["measure"]["atoms"]:
            lines.append(f"  {'/'.join(atom['table'])}: {atom['weight']}")
        lines.append(f"roundtrip: {res['roundtrip']}")
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=".condeq-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, target)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = run(args)
    except NEGATIVE as exc:
        report = io.make_report(_argv_echo(args), _mode(args, DOMINANT_ZERO),
                                {"error": {"code": exc.code, "message": str(exc), **_error_fields(exc)}})
        code = 2
    except (CSEError, OSError, json.JSONDecodeError) as exc:
        err_code = getattr(exc, "code", "io_error")
        if not isinstance(err_code, str):
            err_code = "io_error"
        report = io.make_report(_argv_echo(args), _mode(args, DOMINANT_ZERO),
                                {"error": {"code": err_code, "message": str(exc)}})
        code = 1
    text = json.dumps(report, indent=2) + "\n" if args.json else render_text(report) + "\n"
    _emit(text, args.out)
    return code


def _error_fields(exc) -> dict:
    if isinstance(exc, NotIndividuallyRational):
        return {"player": exc.player_name or exc.player, "maximin": format_rational(exc.maximin),
                "value": format_rational(exc.value)}
    return {}


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
