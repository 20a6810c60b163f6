#!/usr/bin/env python3
"""
plan-order - Demo Runner

This script walks the toy-car assembly plan through the whole pipeline:
1. Generate the total-order plan with its durations
2. Validate it and compute its sequential makespan
3. Deorder it with PRF and schedule the result
4. Search for the best reordering
5. Print both schedules as text Gantt charts

Usage:
    python run_demo.py                      # Default durations (29 / 25 / 16)
    python run_demo.py --slow-pump          # PAC=2, MvT1=8
    python run_demo.py --skip-reorder       # Skip the reordering search
    python run_demo.py --verbose            # Enable debug logging
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import NoReturn

# ASCII art banner
BANNER = """
╔═════════════════════════════════════════════════════════╗
║   🚗 plan-order                                          ║
║   Deordering, reordering and scheduling plans           ║
╚═════════════════════════════════════════════════════════╝
"""

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False) -> None:
    """Configure logging based on verbosity level."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(message)s",
        datefmt="%H:%M:%S"
    )


def parse_args() -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(
        description="plan-order - Deorder and reorder the toy-car assembly plan",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run_demo.py                 Default durations
  python run_demo.py --slow-pump     Faster pump, slower top delivery
  python run_demo.py -v              Verbose output
        """
    )
    parser.add_argument(
        "--slow-pump",
        action="store_true",
        help="Use the duration variant PAC=2, MvT1=8"
    )
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable verbose debug logging"
    )
    parser.add_argument(
        "--skip-reorder",
        action="store_true",
        help="Skip the exact reordering search"
    )
    return parser.parse_args()


def print_chart(title: str, chart: str) -> None:
    """Print a Gantt chart with formatting."""
    print("\n" + "═" * 60)
    print(title)
    print("─" * 60)
    print(chart, end="")
    print("═" * 60 + "\n")


def main() -> NoReturn | None:
    """
    Main entry point for the demo script.

    Orchestrates the demo pipeline:
    1. Parse CLI arguments
    2. Generate and validate the plan
    3. Deorder and schedule
    4. Reorder (optional)
    """
    from src.documents import render_schedule
    from src.exceptions import PlanOrderError
    from src.generators import gen_toy_car
    from src.oracles import mmpr_exact
    from src.parallel import dppl, prf, sequential_execution
    from src.semantics import is_valid

    args = parse_args()
    setup_logging(args.verbose)

    print(BANNER)

    # Step 1: Generate
    durations = {"PAC": 2, "MvT1": 8} if args.slow_pump else None
    instance = gen_toy_car(durations)
    pp, ppi = instance.pplan, instance.ppi
    logger.info(f"✅ Generated toy-car plan: {len(pp.plan.actions)} actions")

    # Step 2: Validate
    if not is_valid(pp.plan, ppi):
        logger.error("❌ Generated plan is not valid")
        sys.exit(1)
    sequential = sequential_execution(pp)
    logger.info(f"📏 Sequential makespan: {sequential.makespan}")

    # Step 3: Deorder and schedule
    try:
        deordered = prf(pp, strict=True, ppi=ppi)
        execution = dppl(deordered)
    except PlanOrderError as e:
        logger.error(f"❌ Deordering failed: {e}")
        sys.exit(1)
    logger.info(
        f"🔀 PRF kept {len(deordered.plan.order)} of {len(pp.plan.order)} orderings, "
        f"makespan {execution.makespan}"
    )
    print_chart("Deordered plan", render_schedule(deordered, execution))

    # Step 4: Reorder
    if args.skip_reorder:
        logger.info("⏭️  Skipping reordering search")
    else:
        logger.info("🚀 Searching for the best reordering...")
        answer = mmpr_exact(pp, ppi)
        assert answer.order is not None and answer.execution is not None
        reordered = pp.with_order(answer.order)
        logger.info(f"✅ Best reordering makespan {answer.optimum} ({answer.nodes:,} nodes)")
        print_chart("Reordered plan", render_schedule(reordered, answer.execution))

    # Summary
    expected = {k: v for k, v in instance.certificate.items() if k in ("mmpd", "mmpr")}
    if expected:
        logger.info(f"📋 Expected optima: {expected}")
    logger.info("✅ Demo completed successfully!")

    return None


if __name__ == "__main__":
    main()
