"""Command-line entry point: ``kuranishi VERB [flags]`` or ``kuranishi --scenario FILE``."""

import argparse
import sys

from ..errors import KuranishiError, ParseError
from .scenario import (
    COMMANDS,
    EXIT_ENGINE,
    EXIT_PARSE,
    dumps,
    load_scenario,
    run_scenario,
    scenario_from_dict,
)


def build_parser():
    p = argparse.ArgumentParser(
        prog="kuranishi",
        description="Exact deformation-theory certificates on flat tori and polydisk charts.",
    )
    p.add_argument("command", nargs="?", choices=COMMANDS, help="verb to run (optional with --scenario)")
    p.add_argument("--scenario", metavar="FILE", help="JSON scenario file")
    p.add_argument("--seed", type=int, help="fuzz seed")
    p.add_argument("--count", type=int, help="fuzz cases per identity and geometry")
    p.add_argument("--order", type=int, metavar="N", help="truncation order in t")
    p.add_argument("--ideal", metavar="GENS", help='monomial ideal, e.g. "t^3" or "t1^2, t2"')
    p.add_argument(
        "--define",
        action="append",
        default=[],
        metavar="NAME=EXPR",
        help="override a definition (repeatable)",
    )
    p.add_argument("--json", metavar="OUT", help="write the JSON report to OUT instead of stdout")
    return p


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {
        "command": args.command,
        "seed": args.seed,
        "count": args.count,
        "order": args.order,
        "ideal": args.ideal,
    }
    try:
        defines = {}
        for item in args.define:
            name, sep, expr = item.partition("=")
            if not sep or not name.strip():
                raise ParseError(f"--define expects NAME=EXPR, got {item!r}", 1, 1)
            defines[name.strip()] = expr
        overrides["define"] = defines
        if args.scenario:
            sc = load_scenario(args.scenario, overrides)
        else:
            if not args.command:
                raise ParseError("give a command or --scenario FILE", 1, 1)
            sc = scenario_from_dict({}, overrides)
    except ParseError as exc:
        _emit(dumps({"status": "parse-error", "error": {"type": "ParseError", "message": str(exc)}}), args.json)
        return EXIT_PARSE
    except (OSError, KuranishiError) as exc:
        _emit(dumps({"status": "engine-error", "error": {"type": type(exc).__name__, "message": str(exc)}}), args.json)
        return EXIT_ENGINE
    report, code = run_scenario(sc)
    _emit(dumps(report), args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
