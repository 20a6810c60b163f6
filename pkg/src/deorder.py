"""
Minimal-constrained deordering and the least-constraint predicates.

mld repeatedly drops one ordering pair while the plan stays valid.
Only covering pairs (pairs of the current transitive reduction) are
candidates: removing any other pair from a closed order is undone by
re-closing. Removing a covering pair from a closed order leaves it
closed, so no re-closure is needed.

Candidates are scanned in (source id, target id) order and the scan
restarts after every successful removal, which makes the output
deterministic.
"""

from __future__ import annotations

import logging

from src.exceptions import InvalidInput
from src.models import OrderRelation, Pair, PartialOrderPlan, Ppi
from src.order import transitive_reduction
from src.semantics import is_valid

logger = logging.getLogger(__name__)

__all__ = [
    "mld",
    "removable_pairs",
    "is_minimal_deordering",
    "is_deordering",
    "is_reordering",
]


def _without(plan: PartialOrderPlan, pair: Pair) -> PartialOrderPlan:
    return plan.with_order(OrderRelation.trusted(plan.order.pairs - {pair}))


def mld(plan: PartialOrderPlan, ppi: Ppi, validator: str = "mtc") -> PartialOrderPlan:
    """
    Minimal-constrained deordering of a valid plan.

    Args:
        plan: A plan valid for ppi.
        ppi: The planning problem instance.
        validator: "mtc" or "bruteforce".

    Returns:
        A valid deordering from which no further pair can be removed.

    Raises:
        InvalidInput: If plan is not valid for ppi.
    """
    if not is_valid(plan, ppi, validator):
        raise InvalidInput(reason="mld requires a valid input plan")

    current = plan
    removed = 0
    while True:
        for pair in sorted(transitive_reduction(current.order)):
            candidate = _without(current, pair)
            if is_valid(candidate, ppi, validator):
                logger.debug(f"Removed {pair[0]} < {pair[1]}")
                current = candidate
                removed += 1
                break
        else:
            break

    logger.info(f"MLD removed {removed} covering pair(s); |order| {len(plan.order)} -> {len(current.order)}")
    return current


def removable_pairs(plan: PartialOrderPlan, ppi: Ppi, validator: str = "mtc") -> list[Pair]:
    """Covering pairs whose removal keeps the plan valid."""
    return [
        pair
        for pair in sorted(transitive_reduction(plan.order))
        if is_valid(_without(plan, pair), ppi, validator)
    ]


def is_minimal_deordering(plan: PartialOrderPlan, ppi: Ppi, validator: str = "mtc") -> bool:
    """Valid, and no single ordering pair can be removed."""
    return is_valid(plan, ppi, validator) and not removable_pairs(plan, ppi, validator)


def is_deordering(
    original: PartialOrderPlan,
    candidate: PartialOrderPlan,
    ppi: Ppi | None = None,
    validator: str = "mtc",
) -> bool:
    """
    Same actions, candidate's order contained in original's, and,
    when ppi is given, candidate valid for it.
    """
    if original.actions != candidate.actions:
        return False
    if not candidate.order.pairs <= original.order.pairs:
        return False
    return ppi is None or is_valid(candidate, ppi, validator)


def is_reordering(
    original: PartialOrderPlan,
    candidate: PartialOrderPlan,
    ppi: Ppi,
    validator: str = "mtc",
) -> bool:
    """Same actions, and candidate is valid for ppi."""
    return original.actions == candidate.actions and is_valid(candidate, ppi, validator)
