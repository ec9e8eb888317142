# app/cli.py
"""
Command line front end.

    python -m app.cli lattice corpus:i2 --format dot
    python -m app.cli check-pair spec.json --tau "0,1|2,3" --sub 5,6
    python -m app.cli bicyclic check --trace "prefix=[2];tail=inf" --sub "k=2,d=5"

JSON (or DOT) goes to stdout, logs to stderr. Exit codes: 0 ok, 1 bad
input, 2 resource cap, 3 internal error.
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from pydantic import BaseModel

from app.config import settings
from app.services.dot_export import render_hasse
from app.services.genset import noetherian_report, omega_fg_analysis
from app.services.oracle import STRATEGIES, certify
from app.services.pairs_lattice import IKPair, build_lattice
from app.services.reports import (
    bicyclic_check_report,
    check_pair_report,
    decompose_report,
    lattice_report,
    pair_arithmetic_report,
    pairs_report,
)
from app.services.text_formats import (
    load_semigroup,
    parse_bicyclic_trace,
    parse_pair,
    parse_partition,
    parse_sub,
    parse_tkd,
    parse_trace,
)
from app.shared.errors import AppError, InternalAppError

logger = logging.getLogger("app.cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icl", description="Left congruences on inverse semigroups via inverse congruence pairs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="full left-congruence lattice")
    p.add_argument("spec", help="JSON spec path or corpus:<id>")
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("pairs", help="all valid inverse congruence pairs")
    p.add_argument("spec")

    p = sub.add_parser("check-pair", help="validity of one pair and its left congruence")
    p.add_argument("spec")
    p.add_argument("--tau", default="", help="partition of idempotent indices, e.g. 0,1|2")
    p.add_argument("--sub", default="", help="non-idempotent members of T, e.g. 5,6")

    for op in ("join", "meet"):
        p = sub.add_parser(op, help=f"{op} of two valid pairs")
        p.add_argument("spec")
        p.add_argument("--p1", required=True, help="<partition>/<sub>")
        p.add_argument("--p2", required=True, help="<partition>/<sub>")

    p = sub.add_parser("oracle", help="brute-force certification report")
    p.add_argument("spec")
    p.add_argument("--strategy", choices=STRATEGIES, default=None)

    p = sub.add_parser("decompose", help="nu and chi components of a left congruence")
    p.add_argument("spec")
    p.add_argument("--rho", required=True, help="partition of element indices")

    p = sub.add_parser("genset", help="finite generation reports")
    p.add_argument("spec")
    p.add_argument("--report", choices=("omega", "noetherian"), default="omega")

    bicyclic = sub.add_parser("bicyclic", help="bicyclic monoid")
    bsub = bicyclic.add_subparsers(dest="bicyclic_command", required=True)
    p = bsub.add_parser("check", help="is (trace, T_{k,d}) an inverse congruence pair")
    p.add_argument("--trace", required=True, help="prefix=[..];tail=inf|per([..])")
    p.add_argument("--sub", required=True, help="k=K,d=D or E")
    p.add_argument("--samples", type=int, default=200)

    return parser


def _emit(result) -> None:
    if isinstance(result, BaseModel):
        sys.stdout.write(result.model_dump_json(indent=2) + "\n")
    else:
        sys.stdout.write(result)


def dispatch(args: argparse.Namespace):
    if args.command == "bicyclic":
        return bicyclic_check_report(
            parse_bicyclic_trace(args.trace), parse_tkd(args.sub), samples=args.samples
        )

    S = load_semigroup(args.spec)
    if args.command == "lattice":
        lattice = build_lattice(S)
        return render_hasse(lattice) if args.format == "dot" else lattice_report(lattice)
    if args.command == "pairs":
        return pairs_report(S)
    if args.command == "check-pair":
        return check_pair_report(S, IKPair(parse_trace(S, args.tau), parse_sub(S, args.sub)))
    if args.command in ("join", "meet"):
        return pair_arithmetic_report(S, args.command, parse_pair(S, args.p1), parse_pair(S, args.p2))
    if args.command == "oracle":
        return certify(S, args.strategy)
    if args.command == "decompose":
        return decompose_report(S, parse_partition(args.rho, S.size))
    if args.command == "genset":
        return omega_fg_analysis(S) if args.report == "omega" else noetherian_report(S)
    raise InternalAppError(f"unhandled command {args.command}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 is reserved for resource caps
        return 1 if exc.code else 0
    try:
        _emit(dispatch(args))
    except AppError as err:
        logger.error("%s: %s", type(err).__name__, err.message)
        sys.stderr.write(json.dumps(err.to_dict()) + "\n")
        return err.exit_code
    except Exception:
        logger.exception("unexpected failure in %s", args.command)
        return 3
    return 0


def main() -> None:
    logging.basicConfig(stream=sys.stderr, level=settings.LOG_LEVEL)
    sys.exit(run())


if __name__ == "__main__":
    main()
