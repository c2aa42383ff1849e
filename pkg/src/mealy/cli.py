"""Command-line driver.

Exit codes: 0 success, 1 analysis hit a budget (or only a semi-decision
applies), 2 malformed input.  Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .machine import MealyError, BudgetError, PreconditionError
from .io import parse_machine, serialize_machine, machine_to_dot
from .minimize import minimize
from .mdreduce import md_reduce
from .connectivity import connection_degree
from .portrait import portrait_of, render_text, render_dot
from .semigroup import semigroup_order, tensor_closure
from .decide import (decide_two_state_reversible, decide_finite_group_2letter,
                     UNKNOWN, FINITE_SEMIGROUP, FREE_RANK_2, FINITE_GROUP,
                     INFINITE_GROUP)
from .census import FamilySpec, classify_family, two_letter_bireversible_census

EXIT_OK = 0
EXIT_BUDGET = 1
EXIT_INPUT = 2

_PHRASES = {
    FINITE_SEMIGROUP: "finite semigroup",
    FREE_RANK_2: "free semigroup of rank 2",
    FINITE_GROUP: "finite group",
    INFINITE_GROUP: "infinite group",
    UNKNOWN: "unknown",
}


def _load(path):
    with open(path) as fh:
        return parse_machine(fh.read())


def _parse_state_word(machine, token):
    if "," in token:
        return tuple(token.split(","))
    if all(len(s) == 1 for s in machine.states):
        return tuple(token)
    return (token,)


def _cmd_info(args):
    m = _load(args.file)
    print("states: %d (%s)" % (m.n_states, " ".join(m.states)))
    print("letters: %d (%s)" % (m.n_letters, " ".join(m.letters)))
    print("invertible: %s" % m.is_invertible())
    print("reversible: %s" % m.is_reversible())
    print("bireversible: %s" % m.is_bireversible())
    from .minimize import is_minimal
    from .connectivity import components
    print("minimal: %s" % is_minimal(m))
    print("connected: %s" % components(m).connected)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(machine_to_dot(m))
        print("dot written to %s" % args.dot, file=sys.stderr)
    return EXIT_OK


def _cmd_minimize(args):
    sys.stdout.write(serialize_machine(minimize(_load(args.file))))
    return EXIT_OK


def _cmd_dual(args):
    sys.stdout.write(serialize_machine(_load(args.file).dual()))
    return EXIT_OK


def _cmd_power(args):
    sys.stdout.write(serialize_machine(_load(args.file).power(args.n)))
    return EXIT_OK


def _cmd_reduce(args):
    trace = md_reduce(_load(args.file), dual_first=args.dual_first)
    for step in trace.steps:
        print("%-6s (%d states, %d letters) -> (%d states, %d letters)"
              % (step.side, step.before[0], step.before[1],
                 step.after[0], step.after[1]))
    print("final: %d states, %d letters%s"
          % (trace.final.n_states, trace.final.n_letters,
             " (md-trivial)" if trace.trivial else ""))
    return EXIT_OK


def _cmd_degree(args):
    deg = connection_degree(_load(args.file), max_power=args.max)
    if deg.finite:
        print("connection degree: %d" % deg.value)
        return EXIT_OK
    print("connection degree: at least %d (all scanned powers connected)"
          % deg.value)
    return EXIT_BUDGET


def _cmd_portrait(args):
    m = _load(args.file)
    p = portrait_of(m, _parse_state_word(m, args.stateword), args.k)
    print(render_text(p, m.letters))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(render_dot(p, m.letters) + "\n")
        print("dot written to %s" % args.dot, file=sys.stderr)
    return EXIT_OK


def _cmd_closure(args):
    m = _load(args.file)
    try:
        closed = tensor_closure(m, max_elements=args.max_elements,
                                max_depth=args.max_depth)
    except PreconditionError as exc:
        print("mealy: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(serialize_machine(closed))
    return EXIT_OK


def _cmd_order(args):
    bound = semigroup_order(_load(args.file),
                            max_elements=args.max_elements,
                            max_depth=args.max_depth)
    print("semigroup order: %s" % bound)
    return EXIT_OK if bound.finite else EXIT_BUDGET


def _cmd_decide(args):
    m = _load(args.file)
    if m.n_states == 2 and m.is_reversible():
        verdict = decide_two_state_reversible(m, max_power=args.max_power)
    elif m.n_letters == 2 and m.is_invertible() and m.is_reversible():
        verdict = decide_finite_group_2letter(m)
    else:
        print("mealy: semi-decision only: no decidable shape "
              "(need 2 reversible states, or 2 letters with an "
              "invertible reversible machine)", file=sys.stderr)
        return EXIT_BUDGET
    phrase = _PHRASES[verdict.kind]
    if verdict.kind == FINITE_SEMIGROUP and verdict.order is not None:
        phrase += " of order %d" % verdict.order
    if verdict.kind == UNKNOWN:
        phrase += " (all powers connected up to %d)" % verdict.bound
    cert_path = args.certificate or (args.file + ".verdict.json")
    with open(cert_path, "w") as fh:
        fh.write(verdict.to_json(indent=2) + "\n")
    print(phrase)
    print("certificate: %s" % cert_path)
    return EXIT_BUDGET if verdict.kind == UNKNOWN else EXIT_OK


def _cmd_census(args):
    filters = frozenset(args.filter or ())
    if args.counts_only:
        if args.letters != 2 or filters != frozenset({"bireversible"}):
            print("mealy: --counts-only supports the 2-letter bireversible "
                  "family", file=sys.stderr)
            return EXIT_INPUT
        report = two_letter_bireversible_census(args.states)
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK
    spec = FamilySpec(args.states, args.letters, filters, args.mode)
    report = classify_family(spec, jobs=args.jobs, csv_path=args.csv,
                             json_path=args.json, journal_path=args.journal,
                             max_power=args.max_power,
                             max_elements=args.max_elements,
                             max_depth=args.max_depth)
    print(report.to_json(indent=2))
    return EXIT_OK


def _add_budget_flags(p, power=False, elements=False):
    if power:
        p.add_argument("--max-power", type=int, default=16,
                       help="largest power exponent to scan")
    if elements:
        p.add_argument("--max-elements", type=int, default=10_000)
        p.add_argument("--max-depth", type=int, default=12)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mealy",
        description="Mealy automaton analyses: minimization, duality, "
                    "powers, portraits, semigroups, and decision procedures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="sizes, predicates, optional DOT export")
    p.add_argument("file")
    p.add_argument("--dot", metavar="OUT")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("minimize", help="print the minimized machine")
    p.add_argument("file")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("dual", help="print the dual machine")
    p.add_argument("file")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("power", help="print the n-th power machine")
    p.add_argument("file")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("reduce", help="md-reduction trace")
    p.add_argument("file")
    p.add_argument("--dual-first", action="store_true")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("degree", help="connection degree scan")
    p.add_argument("file")
    p.add_argument("--max", type=int, default=16)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("portrait", help="portrait of a state word")
    p.add_argument("file")
    p.add_argument("stateword")
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--dot", metavar="OUT")
    p.set_defaults(func=_cmd_portrait)

    p = sub.add_parser("closure", help="tensor closure over the dual semigroup")
    p.add_argument("file")
    _add_budget_flags(p, elements=True)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("order", help="semigroup order (or lower bound)")
    p.add_argument("file")
    _add_budget_flags(p, elements=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("decide", help="finiteness / freeness verdict")
    p.add_argument("file")
    p.add_argument("--certificate", metavar="PATH")
    _add_budget_flags(p, power=True)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("census", help="family enumeration and classification")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--letters", type=int, required=True)
    p.add_argument("--filter", action="append",
                   choices=["invertible", "reversible", "bireversible",
                            "connected", "minimal"])
    p.add_argument("--mode", choices=["labeled", "up-to-iso"],
                   default="labeled")
    p.add_argument("--counts-only", action="store_true",
                   help="fast count-only census (2-letter bireversible)")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--journal", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    _add_budget_flags(p, power=True, elements=True)
    p.set_defaults(func=_cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print("mealy: budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except (MealyError, OSError) as exc:
        print("mealy: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
