"""
plan-order command-line interface.

Every subcommand reads an instance document (a path, or "-" for standard
input) and writes its result to standard output; logs go to standard
error. With --json the result is wrapped in the envelope
{"command", "answer", "witness", "stats"}.

Exit codes:
    0  success
    1  negative answer (invalid plan, bound not met)
    2  usage, parse or semantic error
    3  size guard or search budget exceeded

Usage:
    plan-order gen toycar | plan-order deorder --algo prf | plan-order schedule
    plan-order exact plan.json --problem mmpr --bound 16
    plan-order render plan.json --exec schedule.json
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable, Optional, Sequence

from pydantic import ValidationError

from config.settings import settings
from src.deorder import mld
from src.documents import (
    DEFAULT_CHART_WIDTH,
    dumps,
    dumps_execution,
    load_with_meta,
    loads_execution,
    read_text,
    render_schedule,
    to_document,
    write_text,
)
from src.exceptions import BudgetExceeded, InvalidInput, PlanOrderError, SizeLimitExceeded
from src.generators import (
    gen_3sat,
    gen_coloring,
    gen_gap,
    gen_kk_failure,
    gen_min_cover,
    gen_toy_car,
    gen_vpc_failure,
    named_graph,
)
from src.models import CertifiedInstance, Execution, OracleAnswer, OracleBudget, ParallelPlan, Ppi
from src.oracles import (
    default_budget,
    mmcd_exact,
    mmcr_exact,
    mmpd_exact,
    mmpr_exact,
    mmpr_witness,
    ppl_exact,
)
from src.order import order_size, transitive_reduction
from src.parallel import dppl, prf
from src.reference import kk, vpc
from src.semantics import make_self_contained, mtc_failure, po_valid_bruteforce, strip_self_contained

logger = logging.getLogger(__name__)

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_NEGATIVE", "EXIT_USAGE", "EXIT_BUDGET"]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def setup_logging(verbose: bool = False) -> None:
    """Configure logging on stderr; stdout carries results only."""
    level = logging.DEBUG if verbose else getattr(logging, settings.LOG_LEVEL)
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


# =============================================================================
# OUTPUT
# =============================================================================

def _emit(args: argparse.Namespace, text: str, envelope: dict[str, Any]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(envelope, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _envelope(
    command: str, answer: Any, witness: Any = None, stats: Optional[dict[str, Any]] = None
) -> dict[str, Any]:
    out: dict[str, Any] = {"command": command, "answer": answer, "stats": stats or {}}
    if witness is not None:
        out["witness"] = witness
    return out


def _witness(order: Any = None, execution: Optional[Execution] = None) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if order is not None:
        out["order"] = [list(p) for p in sorted(transitive_reduction(order))]
    if execution is not None:
        out["release"] = dict(sorted(execution.release.items()))
        out["makespan"] = execution.makespan
    return out


def _write_plan(
    args: argparse.Namespace, command: str, ppi: Ppi, pp: ParallelPlan, meta: dict[str, Any]
) -> None:
    """Write a plan document to -o (stdout by default), or the JSON envelope."""
    if args.json:
        doc = to_document(ppi, pp, meta).model_dump(mode="json")
        stats = {"actions": len(pp.plan.actions), "order_size": order_size(pp.plan.order)}
        _emit(args, "", _envelope(command, order_size(pp.plan.order), doc, stats))
        return
    write_text(dumps(ppi, pp, meta), args.output)


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_validate(args: argparse.Namespace) -> int:
    ppi, pp, _ = load_with_meta(args.file)
    if args.brute:
        valid = po_valid_bruteforce(pp.plan, ppi)
        reason = None if valid else "some sorting fails"
    else:
        failure = mtc_failure(make_self_contained(pp.plan, ppi))
        valid = failure is None
        reason = None if failure is None else f"{failure[1]} needed by {failure[0]}"
    text = "valid\n" if valid else f"invalid: {reason}\n"
    _emit(args, text, _envelope("validate", valid, stats={"actions": len(pp.plan.actions)}))
    return EXIT_OK if valid else EXIT_NEGATIVE


def cmd_deorder(args: argparse.Namespace) -> int:
    ppi, pp, meta = load_with_meta(args.file)
    if args.algo == "mld":
        result = pp.with_plan(mld(pp.plan, ppi))
    else:
        result = prf(pp, strict=args.strict, ppi=ppi if args.strict else None)
    _write_plan(args, "deorder", ppi, result, meta)
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    ppi, pp, _ = load_with_meta(args.file)
    execution = dppl(pp)
    if args.exec_out:
        write_text(dumps_execution(execution), args.exec_out)
    rows = sorted(execution.release.items(), key=lambda kv: (kv[1], kv[0]))
    text = "".join(f"{a} {t}\n" for a, t in rows) + f"makespan={execution.makespan}\n"
    stats = {"actions": len(pp.plan.actions)}
    _emit(args, text, _envelope("schedule", execution.makespan, _witness(execution=execution), stats))
    return EXIT_OK


def _budget(args: argparse.Namespace) -> OracleBudget:
    base = default_budget(args.problem)
    return OracleBudget(
        max_actions=args.max_actions or base.max_actions,
        max_nodes=args.max_nodes or base.max_nodes,
    )


def cmd_exact(args: argparse.Namespace) -> int:
    ppi, pp, _ = load_with_meta(args.file)
    budget = _budget(args)
    answer: Optional[OracleAnswer]
    if args.problem == "mmpr" and args.bound is not None:
        answer = mmpr_witness(pp, ppi, args.bound, budget)
    elif args.problem == "mmcd":
        answer = mmcd_exact(pp.plan, ppi, budget, args.measure)
    elif args.problem == "mmcr":
        answer = mmcr_exact(pp.plan, ppi, budget, args.measure)
    elif args.problem == "ppl":
        answer = ppl_exact(pp, budget)
    elif args.problem == "mmpd":
        answer = mmpd_exact(pp, ppi, budget, definite_only=args.definite_only)
    else:
        answer = mmpr_exact(pp, ppi, budget)

    if answer is None:
        text = f"{args.problem}<={args.bound}: no\n"
        _emit(args, text, _envelope("exact", False, stats={"problem": args.problem, "bound": args.bound}))
        return EXIT_NEGATIVE

    met = args.bound is None or answer.optimum <= args.bound
    text = f"{args.problem}={answer.optimum}\n"
    if args.bound is not None:
        text += f"{args.problem}<={args.bound}: {'yes' if met else 'no'}\n"
    stats = {"problem": args.problem, "nodes": answer.nodes, "actions": len(pp.plan.actions)}
    if args.bound is not None:
        stats["bound"] = args.bound
    witness = _witness(answer.order, answer.execution)
    _emit(args, text, _envelope("exact", answer.optimum, witness, stats))
    return EXIT_OK if met else EXIT_NEGATIVE


def cmd_refalg(args: argparse.Namespace) -> int:
    ppi, pp, meta = load_with_meta(args.file)
    sc = make_self_contained(pp.plan, ppi)
    out = vpc(sc) if args.algo == "vpc" else kk(sc)
    plan, _ = strip_self_contained(out)
    _write_plan(args, "refalg", ppi, pp.with_plan(plan), meta)
    return EXIT_OK


def _gen_instance(args: argparse.Namespace) -> CertifiedInstance:
    if args.family == "cover":
        return gen_min_cover(args.ground, args.subsets)
    if args.family == "coloring":
        return gen_coloring(named_graph(args.graph), totalize=args.totalize)
    if args.family == "3sat":
        return gen_3sat(
            args.clauses,
            num_atoms=args.atoms,
            allow_repeats=args.allow_repeats,
            strict_typo=args.strict_typo,
        )
    if args.family == "gap":
        return gen_gap(args.k, args.n)
    if args.family == "toycar":
        return gen_toy_car(dict(args.duration or []))
    if args.family == "vpcfail":
        return gen_vpc_failure(args.variant)
    return gen_kk_failure()


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        instance = _gen_instance(args)
    except InvalidInput as e:
        # generator parameter errors
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    meta: dict[str, Any] = {"generator": instance.name, "certificate": instance.certificate}
    if instance.witness_execution is not None:
        meta["witness_release"] = dict(sorted(instance.witness_execution.release.items()))
    _write_plan(args, "gen", instance.ppi, instance.pplan, meta)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    ppi, pp, _ = load_with_meta(args.file)
    execution = loads_execution(read_text(args.exec_file), pp.plan)
    text = render_schedule(pp, execution, args.width)
    _emit(args, text, _envelope("render", execution.makespan, {"chart": text.splitlines()}))
    return EXIT_OK


# =============================================================================
# PARSER
# =============================================================================

def _csv(text: str) -> list[str]:
    return [x for x in text.split(",") if x]


def _subsets(text: str) -> list[list[str]]:
    return [_csv(part) for part in text.split(";")]


def _clauses(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in _csv(part)] for part in text.split(";") if part]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"clauses must be integers: {e}") from e


def _duration(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep or not value.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError(f"expected NAME=INT, got {text!r}")
    return name, int(value)


def _positive(text: str) -> int:
    if not text.isdigit() or int(text) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    """The plan-order argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the JSON result envelope")
    common.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", default=None, help="Output document (default: stdout)")

    def source(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", nargs="?", default="-", help="Instance document ('-' for stdin)")

    parser = argparse.ArgumentParser(
        prog="plan-order",
        description="Deorder, reorder and schedule partial-order plans",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  plan-order gen toycar | plan-order deorder --algo prf | plan-order schedule
  plan-order exact plan.json --problem mmcd
  plan-order gen coloring --graph petersen --totalize -o petersen.json
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Check plan validity")
    source(p)
    p.add_argument("--brute", action="store_true", help="Enumerate every sorting instead of the MTC")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("deorder", parents=[common, output], help="Deorder a plan")
    source(p)
    p.add_argument("--algo", choices=["mld", "prf"], required=True)
    p.add_argument("--strict", action="store_true", help="prf: check simple concurrency and validity")
    p.set_defaults(handler=cmd_deorder)

    p = sub.add_parser("schedule", parents=[common], help="Minimum execution of a definite plan")
    source(p)
    p.add_argument("--exec-out", default=None, help="Also write the execution document here")
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser("exact", parents=[common], help="Run an exact oracle")
    source(p)
    p.add_argument("--problem", choices=["mmcd", "mmcr", "ppl", "mmpd", "mmpr"], required=True)
    p.add_argument("--bound", type=int, default=None, help="Decide optimum <= bound")
    p.add_argument("--max-actions", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--measure", choices=["closure", "reduction"], default=None)
    p.add_argument("--definite-only", action="store_true", help="mmpd: definite deorderings only")
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("refalg", parents=[common, output], help="Run VPC or KK")
    source(p)
    p.add_argument("--algo", choices=["vpc", "kk"], required=True)
    p.set_defaults(handler=cmd_refalg)

    p = sub.add_parser("render", parents=[common], help="Text Gantt chart of an execution")
    source(p)
    p.add_argument("--exec", dest="exec_file", required=True, help="Execution document")
    p.add_argument("--width", type=_positive, default=DEFAULT_CHART_WIDTH, help="Maximum chart columns")
    p.set_defaults(handler=cmd_render)

    gen = sub.add_parser("gen", help="Generate a certified instance")
    families = gen.add_subparsers(dest="family", required=True)
    g = families.add_parser("cover", parents=[common, output])
    g.add_argument("--ground", type=_csv, required=True, help="Comma-separated ground set")
    g.add_argument("--subsets", type=_subsets, required=True, help="Subsets, ';'-separated")
    g = families.add_parser("coloring", parents=[common, output])
    g.add_argument("--graph", required=True, help="K3, C5, petersen, edge or empty:<n>")
    g.add_argument("--totalize", action="store_true")
    g = families.add_parser("3sat", parents=[common, output])
    g.add_argument("--clauses", type=_clauses, required=True, help="e.g. '1,2,-3;-1,2,3'")
    g.add_argument("--atoms", type=int, default=None)
    g.add_argument("--allow-repeats", action="store_true")
    g.add_argument("--strict-typo", action="store_true")
    g = families.add_parser("gap", parents=[common, output])
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g = families.add_parser("toycar", parents=[common, output])
    g.add_argument("--duration", type=_duration, action="append", help="NAME=INT override")
    g = families.add_parser("vpcfail", parents=[common, output])
    g.add_argument("--variant", choices=["acb", "abc"], default="abc")
    families.add_parser("kkfail", parents=[common, output])
    gen.set_defaults(handler=cmd_gen)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one plan-order command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (BudgetExceeded, SizeLimitExceeded) as e:
        logger.error(f"❌ {e}")
        return EXIT_BUDGET
    except InvalidInput as e:
        logger.error(f"❌ {e}")
        return EXIT_NEGATIVE
    except PlanOrderError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE
    except (ValidationError, OSError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
