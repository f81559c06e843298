"""Command-line entry point: ``rmqe <command> ...``.

Exit codes: 0 success, 1 internal failure, 2 bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .fixtures import FixtureError, fixtures, get_fixture
from .frames import CONDITIONS, check_condition, logic_profile
from .models import EvaluationError, Model, PreconditionError, evaluate, model_from_json, model_to_json
from .qe import normalize_qf_dlo, qe_dlo
from .reproduce import report_json, report_text, reproduce
from .syntax import ParseError, parse, to_text
from .theories import SearchResult, SignatureError, find_finite_model, holds_at_s


class UsageError(Exception):
    pass


def _load_model(ref: str) -> Model:
    if os.path.exists(ref):
        try:
            with open(ref, encoding="utf-8") as fh:
                return model_from_json(json.load(fh))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read model {ref}: {exc}") from exc
    try:
        return get_fixture(ref).model
    except KeyError as exc:
        raise UsageError(f"{ref!r} is neither a model file nor a fixture id") from exc


def _parse_assign(text: str | None) -> dict:
    out = {}
    for item in filter(None, (text or "").split(",")):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad assignment {item!r}; use x=2,y=1/2")
        out[name.strip()] = value.strip()
    return out


def _formula(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from exc


def cmd_eval(args) -> int:
    m = _load_model(args.model)
    world = args.world or m.s
    print("true" if evaluate(m, world, _formula(args.formula), _parse_assign(args.assign)) else "false")
    return 0


def cmd_check_frame(args) -> int:
    m = _load_model(args.model)
    names = [args.condition] if args.condition else list(CONDITIONS)
    for name in names:
        if name not in CONDITIONS:
            raise UsageError(f"unknown condition {name!r}; known: {', '.join(CONDITIONS)}")
        r = check_condition(m.frame, name)
        if r.satisfied:
            print(f"{name:15} satisfied")
        else:
            shown = ", ".join("<" + ",".join(t) + ">" for t in r.counterexamples[:5])
            more = f" (+{len(r.counterexamples) - 5} more)" if len(r.counterexamples) > 5 else ""
            print(f"{name:15} violated: {shown}{more}")
    if not args.condition:
        labels = sorted(logic_profile(m.frame) & {"B", "RM", "B+K"})
        print("labels:", ", ".join(labels) if labels else "none")
    return 0


def cmd_check_theory(args) -> int:
    m = _load_model(args.model)
    r = holds_at_s(m, args.theory, args.schema_bound)
    for axiom, ok in r.rows:
        print(f"{axiom:12} {'holds' if ok else 'fails'}")
    print(f"{r.theory}: {'all axioms hold at s' if r.all_hold else 'fails at s'}")
    return 0


def cmd_normalize(args) -> int:
    print(to_text(normalize_qf_dlo(_formula(args.formula))))
    return 0


def cmd_qe(args) -> int:
    m = _load_model(args.model)
    print(to_text(qe_dlo(m, _formula(args.formula))))
    return 0


def cmd_search(args) -> int:
    conds = [c.strip() for c in (args.conditions or "").split(",") if c.strip()]
    stats = SearchResult(None)
    m = find_finite_model(args.theory, args.max_domain, args.max_worlds, conds,
                          guard=not args.no_guard, stats=stats)
    if m is None:
        print("no model found")
    else:
        print(json.dumps(model_to_json(m), indent=2))
    print(f"frames tried: {stats.frames_tried}, valuations visited: {stats.candidates}", file=sys.stderr)
    return 0


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for fx in fixtures():
            print(f"{fx.id:20} {fx.notes}")
        return 0
    if not args.id:
        raise UsageError("fixtures dump needs a fixture id")
    try:
        fx = get_fixture(args.id)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(model_to_json(fx.model), indent=2))
    return 0


def cmd_reproduce(args) -> int:
    results = reproduce()
    print(report_json(results) if args.json else report_text(results))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rmqe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="truth of a formula at a world")
    e.add_argument("--model", required=True, help="fixture id or model JSON file")
    e.add_argument("--world", help="world id (default: designated)")
    e.add_argument("--formula", required=True)
    e.add_argument("--assign", help="comma list such as x=2,y=1/2")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check-frame", help="frame conditions of a model's frame")
    c.add_argument("--model", required=True)
    c.add_argument("--condition")
    c.set_defaults(func=cmd_check_frame)

    t = sub.add_parser("check-theory", help="evaluate a theory's axioms at s")
    t.add_argument("--model", required=True)
    t.add_argument("--theory", required=True)
    t.add_argument("--schema-bound", type=int, default=2)
    t.set_defaults(func=cmd_check_theory)

    n = sub.add_parser("normalize", help="one-variable normal form (x = x or x < x)")
    n.add_argument("--formula", required=True)
    n.set_defaults(func=cmd_normalize)

    q = sub.add_parser("qe", help="eliminate quantifiers over a DLO model")
    q.add_argument("--model", required=True)
    q.add_argument("--formula", required=True)
    q.set_defaults(func=cmd_qe)

    s = sub.add_parser("search", help="bounded finite model search")
    s.add_argument("--theory", required=True)
    s.add_argument("--max-domain", type=int, required=True)
    s.add_argument("--max-worlds", type=int, required=True)
    s.add_argument("--conditions", default="", help="comma list, e.g. b1,b2,b3,b4")
    s.add_argument("--no-guard", action="store_true", help="lift the size guard")
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("fixtures", help="list or dump built-in models")
    f.add_argument("action", nargs="?", choices=("list", "dump"), default="list")
    f.add_argument("id", nargs="?")
    f.set_defaults(func=cmd_fixtures)

    r = sub.add_parser("reproduce", help="recompute recorded claims about the fixtures")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, EvaluationError, PreconditionError, SignatureError, ValueError) as exc:
        print(f"rmqe: error: {exc}", file=sys.stderr)
        return 2
    except FixtureError as exc:
        print(f"rmqe: fixture error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"rmqe: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
