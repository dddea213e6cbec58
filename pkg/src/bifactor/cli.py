"""Command-line surface.

Subcommands: validate, solve, check, oracle, gen, verify-factor,
verify-cert.  All read the instance from a file argument or standard
input ("-").  Exit codes: 0 when the instance is feasible / the criterion
holds / verification passed; 1 for the opposite verdict (with the witness
on standard output); 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .core import (Certificate, Factor, InvalidInstanceError, validate_instance,
                   verify_certificate, verify_factor)
from .criteria import (ExhaustionLimitError, NotApplicableError, check_cymer_kano,
                       check_hall_condition, check_heinrich, check_new_criterion,
                       check_ore_f_factor)
from .generator import GenParams, gen_random
from .ioformat import (InstanceDocument, ParseError, emit_instance, emit_outcome,
                       parse_instance, parse_outcome)
from .oracle import BudgetExceededError, OracleBudget, brute_force_factor, count_factors
from .solver import solve


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_document(path: str) -> InstanceDocument:
    doc = parse_instance(_read_text(path))
    validate_instance(doc.instance)
    return doc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifactor",
        description="Degree-constrained spanning subgraphs of bipartite multigraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_arg(p):
        p.add_argument("instance", nargs="?", default="-",
                       help="instance file, or - for stdin (default)")

    p = sub.add_parser("validate", help="check instance invariants")
    add_instance_arg(p)

    p = sub.add_parser("solve", help="construct a factor or an infeasibility certificate")
    p.add_argument("--warm-start", action="store_true",
                   help="greedily saturate edges before augmenting (same outcome, "
                        "fewer augmentations)")
    add_instance_arg(p)

    p = sub.add_parser("check", help="run an exhaustive feasibility criterion")
    p.add_argument("--criterion", required=True,
                   choices=["new", "cymer-kano", "heinrich", "ore", "hall"])
    p.add_argument("--m-floor", type=int, default=None,
                   help="multiplicity floor (required for --criterion hall)")
    p.add_argument("--limit", type=int, default=None,
                   help="override the exhaustion limit for this call")
    add_instance_arg(p)

    p = sub.add_parser("oracle", help="brute-force search over all sub-multigraphs")
    p.add_argument("--count", action="store_true", help="count satisfying factors")
    p.add_argument("--budget", type=int, default=None,
                   help="maximum raw configuration count")
    add_instance_arg(p)

    p = sub.add_parser("gen", help="emit a seeded random instance")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--edge-prob", type=float, required=True)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--g-max", type=int, default=0)
    p.add_argument("--f-slack", type=int, default=0)
    p.add_argument("--min-mult-floor", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify-factor", help="check a factor document against an instance")
    p.add_argument("instance", help="instance file (not stdin when the outcome is piped)")
    p.add_argument("outcome", nargs="?", default="-",
                   help="result document, or - for stdin (default)")
    p.add_argument("--use-gy", action="store_true",
                   help="also enforce the instance document's gy lower bounds")

    p = sub.add_parser("verify-cert", help="check a certificate document against an instance")
    p.add_argument("instance", help="instance file (not stdin when the outcome is piped)")
    p.add_argument("outcome", nargs="?", default="-",
                   help="result document, or - for stdin (default)")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ParseError, NotApplicableError, ExhaustionLimitError,
            BudgetExceededError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInstanceError as exc:
        for problem in exc.violations:
            print(f"error: {problem}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "validate":
        doc = parse_instance(_read_text(args.instance))
        try:
            validate_instance(doc.instance)
        except InvalidInstanceError as exc:
            lines = ["bifactor-result 1", "kind validate", "valid false"]
            lines += [f"violation {p}" for p in exc.violations]
            print("\n".join(lines))
            return 1
        print("bifactor-result 1\nkind validate\nvalid true")
        return 0

    if args.command == "solve":
        doc = _load_document(args.instance)
        outcome = solve(doc.instance, warm_start=args.warm_start)
        sys.stdout.write(emit_outcome(outcome))
        return 0 if outcome.factor is not None else 1

    if args.command == "check":
        doc = _load_document(args.instance)
        inst = doc.instance
        if args.criterion == "new":
            report = check_new_criterion(inst, limit=args.limit)
        elif args.criterion == "cymer-kano":
            report = check_cymer_kano(inst, g_y=doc.g_y, limit=args.limit)
        elif args.criterion == "heinrich":
            report = check_heinrich(inst, g_y=doc.g_y, limit=args.limit)
        elif args.criterion == "ore":
            report = check_ore_f_factor(inst, limit=args.limit)
        else:
            if args.m_floor is None:
                raise ValueError("--criterion hall requires --m-floor")
            report = check_hall_condition(inst, args.m_floor, limit=args.limit)
        sys.stdout.write(emit_outcome(report))
        return 0 if report.holds else 1

    if args.command == "oracle":
        doc = _load_document(args.instance)
        budget = OracleBudget(args.budget) if args.budget is not None else None
        if args.count:
            n = count_factors(doc.instance, g_y=doc.g_y, budget=budget)
            sys.stdout.write(emit_outcome(n))
            return 0 if n > 0 else 1
        found = brute_force_factor(doc.instance, g_y=doc.g_y, budget=budget)
        sys.stdout.write(emit_outcome(found))
        return 0 if found is not None else 1

    if args.command == "gen":
        params = GenParams(x_count=args.x, y_count=args.y, edge_prob=args.edge_prob,
                           max_mult=args.max_mult, g_max=args.g_max,
                           f_slack=args.f_slack, min_mult_floor=args.min_mult_floor,
                           seed=args.seed)
        sys.stdout.write(emit_instance(gen_random(params)))
        return 0

    if args.command == "verify-factor":
        doc = _load_document(args.instance)
        result = parse_outcome(_read_text(args.outcome))
        if not isinstance(result, Factor):
            raise ValueError("expected a factor document, got a certificate")
        report = verify_factor(doc.instance, result,
                               g_y=doc.g_y if args.use_gy else None)
        sys.stdout.write(emit_outcome(report))
        return 0 if report.valid else 1

    if args.command == "verify-cert":
        doc = _load_document(args.instance)
        result = parse_outcome(_read_text(args.outcome))
        if not isinstance(result, Certificate):
            raise ValueError("expected a certificate document, got a factor")
        report = verify_certificate(doc.instance, result)
        sys.stdout.write(emit_outcome(report))
        return 0 if report.valid else 1

    raise AssertionError(f"unhandled command {args.command}")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
