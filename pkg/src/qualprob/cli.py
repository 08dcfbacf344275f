"""Command-line front end.

Exit codes: 0 pass/feasible/Always, 1 fail/infeasible/NotAlways,
2 usage or parse error, 3 a size cap was exceeded.  Output is
byte-deterministic for fixed inputs; rationals render as num/den
(integers without the /1).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .algebra import CapExceeded, parse_event
from .axioms import AxiomReport, check_conditional, check_partial, check_unconditional
from .credal import (
    CredalSet,
    EmptyCredalSet,
    ZeroProbabilityConditioner,
    bounds as credal_bounds,
    cond_bounds,
    entails,
)
from .oracle import enumerate_qualitative_probabilities
from .ordering import Distribution
from .problemfile import Problem, ProblemFileError, parse_problem
from .ratlp import SizeCapExceeded
from .realize import Realization, realize_complete, realize_partial

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def rat(x: Fraction) -> str:
    return str(x)


def _load(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise _CliError(EXIT_USAGE, f"{path}: {err.strerror}") from err
    try:
        return parse_problem(text)
    except ProblemFileError as err:
        raise _CliError(EXIT_USAGE, err.locate(path)) from err


def _parse_cli_event(problem: Problem, text: str, flag: str):
    try:
        return parse_event(problem.space, text)
    except Exception as err:  # parse or unknown-atom errors carry positions
        raise _CliError(EXIT_USAGE, f"{flag}: {err}") from err


def _credal(problem: Problem) -> CredalSet:
    if problem.partial is None:
        raise _CliError(EXIT_USAGE, "this command needs an order: file")
    return CredalSet(problem.space, problem.partial)


def _dist_dict(d: Distribution) -> dict:
    return {
        name: rat(mass) for name, mass in zip(d.space.names, d.masses)
    } if d.space.mode == "worlds" else {
        d.space.world_label(i): rat(mass) for i, mass in enumerate(d.masses)
    }


def _witness_json(w) -> Optional[dict]:
    if w is None:
        return None
    return {"events": [e.label() for e in w.events], "detail": w.detail}


def _report_json(report: AxiomReport) -> dict:
    return {
        "verdicts": {
            name: {
                "passed": v.passed,
                "witness": _witness_json(v.witness),
                "note": v.note,
            }
            for name, v in report.verdicts.items()
        },
        "mode": report.mode,
        "notes": list(report.notes),
        "coverage": rat(report.coverage) if report.coverage is not None else None,
    }


def _report_text(out: list, report: AxiomReport, heading: Optional[str] = None) -> None:
    if heading:
        out.append(heading)
    for name, v in report.verdicts.items():
        line = f"{name}: {'pass' if v.passed else 'fail'}"
        if v.note:
            line += f"  ({v.note})"
        if v.witness is not None:
            events = " ".join(e.label() for e in v.witness.events)
            line += f"  witness: {events}; {v.witness.detail}"
        out.append(line)
    if report.coverage is not None:
        out.append(f"coverage: {rat(report.coverage)}")
    for note in report.notes:
        out.append(f"note: {note}")


def _emit(args, text_lines: list, payload: dict) -> None:
    if args.format == "json":
        payload = {"schema": 1, **payload}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _cmd_check(args) -> int:
    problem = _load(args.file)
    reports = []
    if problem.complete is not None:
        reports.append(
            ("unconditional", check_unconditional(
                problem.complete,
                certain_true=problem.certain_true,
                certain_false=problem.certain_false,
            ))
        )
        if problem.conditional is not None:
            reports.append(("conditional", check_conditional(problem.conditional)))
    else:
        reports.append(("judgments", check_partial(problem.partial)))

    passed = all(r.all_passed() for _, r in reports)
    lines: list = []
    for heading, report in reports:
        _report_text(lines, report, heading if len(reports) > 1 else None)
    lines.append(f"result: {'pass' if passed else 'fail'}")
    payload = {
        "command": "check",
        "reports": {heading: _report_json(r) for heading, r in reports},
        "passed": passed,
    }
    _emit(args, lines, payload)
    return EXIT_PASS if passed else EXIT_FAIL


def _judgment_json(j) -> dict:
    return {
        "lhs": j.lhs.label(),
        "rel": j.rel.value,
        "rhs": j.rhs.label(),
        "id": j.id,
    }


def _cmd_realize(args) -> int:
    problem = _load(args.file)
    if problem.complete is not None:
        outcome = realize_complete(problem.complete)
    else:
        outcome = realize_partial(problem.partial)
    if isinstance(outcome, Realization):
        lines = ["realizable: yes"]
        for name, mass in _dist_dict(outcome.distribution).items():
            lines.append(f"mass {name} = {mass}")
        lines.append(f"margin = {rat(outcome.margin)}")
        payload = {
            "command": "realize",
            "realizable": True,
            "distribution": _dist_dict(outcome.distribution),
            "margin": rat(outcome.margin),
            "conflict": None,
        }
        _emit(args, lines, payload)
        return EXIT_PASS
    lines = ["realizable: no", "conflict:"]
    for j in outcome.conflict:
        lines.append(f"  {j.lhs.label()} {j.rel.value} {j.rhs.label()} [{j.id}]")
    payload = {
        "command": "realize",
        "realizable": False,
        "distribution": None,
        "margin": None,
        "conflict": [_judgment_json(j) for j in outcome.conflict],
    }
    _emit(args, lines, payload)
    return EXIT_FAIL


def _cmd_entail(args) -> int:
    problem = _load(args.file)
    cs = _credal(problem)
    lhs = _parse_cli_event(problem, args.lhs, "--lhs")
    rhs = _parse_cli_event(problem, args.rhs, "--rhs")
    try:
        got = entails(cs, lhs, rhs)
    except EmptyCredalSet:
        raise _CliError(EXIT_FAIL, "empty credal set") from None
    if got.always:
        _emit(args, ["always"], {"command": "entail", "always": True, "witness": None})
        return EXIT_PASS
    lines = ["not always"]
    for name, mass in _dist_dict(got.witness).items():
        lines.append(f"witness {name} = {mass}")
    _emit(
        args,
        lines,
        {"command": "entail", "always": False, "witness": _dist_dict(got.witness)},
    )
    return EXIT_FAIL


def _cmd_bounds(args) -> int:
    problem = _load(args.file)
    cs = _credal(problem)
    event = _parse_cli_event(problem, args.event, "--event")
    try:
        if args.given is not None:
            given = _parse_cli_event(problem, args.given, "--given")
            b = cond_bounds(cs, event, given)
        else:
            b = credal_bounds(cs, event)
    except EmptyCredalSet:
        raise _CliError(EXIT_FAIL, "empty credal set") from None
    except ZeroProbabilityConditioner:
        raise _CliError(EXIT_FAIL, "conditioner has probability 0 across the set") from None
    yn = lambda flag: "yes" if flag else "no"
    lines = [
        f"{rat(b.lower)} {rat(b.upper)}",
        f"attained: {yn(b.attained_lower)} {yn(b.attained_upper)}",
    ]
    payload = {
        "command": "bounds",
        "lower": rat(b.lower),
        "upper": rat(b.upper),
        "attained_lower": b.attained_lower,
        "attained_upper": b.attained_upper,
    }
    _emit(args, lines, payload)
    return EXIT_PASS


def _cmd_enumerate(args) -> int:
    from .algebra import Space

    names = tuple(f"w{i + 1}" for i in range(args.worlds))
    space = Space("worlds", names)
    result = enumerate_qualitative_probabilities(space)
    lines = [
        f"count: {result.total_count}",
        f"all_realizable: {'yes' if result.all_realizable else 'no'}",
    ]
    payload = {
        "command": "enumerate",
        "count": result.total_count,
        "all_realizable": result.all_realizable,
    }
    _emit(args, lines, payload)
    return EXIT_PASS if result.all_realizable else EXIT_FAIL


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        journal_dir=args.journal_dir,
        world_cap=args.world_cap,
        allow_origins=tuple(args.allow_origin or ()),
        static_dir=args.static_dir,
    )
    uvicorn.run(create_app(config), host=args.host, port=args.port, log_level="warning")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qualprob",
        description="Comparative-belief toolkit: axiom checks, realizability, credal bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="axiom reports for a problem file")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("realize", help="find an agreeing distribution or a certificate")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("entail", help="does every compatible distribution rank lhs >= rhs")
    p.add_argument("file")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_entail)

    p = sub.add_parser("bounds", help="probability bounds across the credal set")
    p.add_argument("file")
    p.add_argument("--event", required=True)
    p.add_argument("--given")
    add_format(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("enumerate", help="all qualitative probabilities at a world count")
    p.add_argument("--worlds", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("serve", help="run the elicitation session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8777)
    p.add_argument("--journal-dir")
    p.add_argument("--world-cap", type=int, default=10)
    p.add_argument(
        "--allow-origin",
        action="append",
        metavar="ORIGIN",
        help="origin allowed to call from a browser; repeatable",
    )
    p.add_argument(
        "--static-dir",
        metavar="DIR",
        help="also serve the files under DIR at the root path",
    )
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as err:
        sys.stderr.write(str(err) + "\n")
        return err.code
    except (CapExceeded, SizeCapExceeded) as err:
        sys.stderr.write(str(err) + "\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
