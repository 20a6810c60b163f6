"""
Plan validity: total-order execution, sorting enumeration and the MTC.

Features:
    - to_valid: the state-progression check for a totally ordered plan
    - po_valid_bruteforce: a p.o. plan is valid iff every topological sort is
    - make_self_contained / strip_self_contained: a_I/a_G encoding of a PPI
    - pct_view: producer/consumer/threat view of GT actions
    - mtc_valid: polynomial validity via the modal truth criterion
    - MtcChecker: the same criterion compiled to bitmasks for searches

A producer and a consumer never count as threats to their own causal
link, so toggling actions that destroy their own precondition are fine.

Example:
    >>> sc = make_self_contained(plan, ppi)
    >>> mtc_valid(sc) == po_valid_bruteforce(plan, ppi)
    True
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

from config.settings import settings
from src.exceptions import IdCollision, SizeLimitExceeded
from src.models import (
    GOAL_ID,
    INIT_ID,
    Action,
    Literal,
    LiteralSet,
    OrderRelation,
    PartialOrderPlan,
    PctView,
    Ppi,
    SelfContainedPlan,
    negate,
)
from src.order import pred_masks, topological_sorts

logger = logging.getLogger(__name__)

__all__ = [
    "to_valid",
    "progress",
    "po_valid_bruteforce",
    "make_self_contained",
    "strip_self_contained",
    "pct_view",
    "mtc_valid",
    "mtc_failure",
    "is_valid",
    "MtcChecker",
]


# =============================================================================
# TOTAL ORDERS
# =============================================================================

def progress(state: Iterable[Literal], action: Action) -> LiteralSet:
    """State after applying action: (S - Neg(post)) | post."""
    return (frozenset(state) - negate(action.post)) | action.post


def to_valid(seq: Sequence[Action], state: Iterable[Literal], target: Iterable[Literal]) -> bool:
    """
    Whether the sequence is executable from state and reaches target.

    Args:
        seq: Actions in execution order.
        state: Consistent starting literals.
        target: Consistent literals required at the end.

    Returns:
        True iff every precondition holds when its action is reached and
        target holds after the last action.
    """
    current = frozenset(state)
    for action in seq:
        if not action.pre <= current:
            return False
        current = progress(current, action)
    return frozenset(target) <= current


def po_valid_bruteforce(
    plan: PartialOrderPlan,
    ppi: Ppi,
    max_actions: Optional[int] = None,
) -> bool:
    """
    Validity by checking every topological sort.

    Raises:
        SizeLimitExceeded: If the plan has more actions than the guard.
    """
    limit = max_actions or settings.BRUTEFORCE_MAX_ACTIONS
    if len(plan.actions) > limit:
        raise SizeLimitExceeded(limit=limit, size=len(plan.actions))
    for seq in topological_sorts(plan):
        if not to_valid(seq, ppi.init, ppi.goal):
            logger.debug(f"Invalid sorting: {[a.id for a in seq]}")
            return False
    return True


# =============================================================================
# SELF-CONTAINED PLANS
# =============================================================================

def make_self_contained(plan: PartialOrderPlan, ppi: Ppi) -> SelfContainedPlan:
    """
    Add a_I (posting init) and a_G (requiring goal) around the plan.

    Raises:
        IdCollision: If the plan already uses a_I or a_G.
    """
    for reserved in (INIT_ID, GOAL_ID):
        if reserved in plan.by_id:
            raise IdCollision(action_id=reserved)
    init = Action(id=INIT_ID, pre=frozenset(), post=ppi.init, duration=0)
    goal = Action(id=GOAL_ID, pre=ppi.goal, post=frozenset(), duration=0)
    pairs = set(plan.order.pairs)
    pairs.add((INIT_ID, GOAL_ID))
    for action_id in plan.ids:
        pairs.add((INIT_ID, action_id))
        pairs.add((action_id, GOAL_ID))
    full = PartialOrderPlan(
        actions=(*plan.actions, init, goal),
        order=OrderRelation.trusted(pairs),
    )
    return SelfContainedPlan(plan=full)


def strip_self_contained(sc: SelfContainedPlan) -> tuple[PartialOrderPlan, Ppi]:
    """Inverse of make_self_contained."""
    init = sc.plan.action(INIT_ID)
    goal = sc.plan.action(GOAL_ID)
    reserved = {INIT_ID, GOAL_ID}
    pairs = {(a, b) for a, b in sc.plan.order.pairs if a not in reserved and b not in reserved}
    plan = PartialOrderPlan(
        actions=tuple(a for a in sc.plan.actions if a.id not in reserved),
        order=OrderRelation.trusted(pairs),
    )
    return plan, Ppi(init=init.post, goal=goal.pre)


# =============================================================================
# MODAL TRUTH CRITERION
# =============================================================================

def pct_view(actions: Iterable[Action]) -> PctView:
    """Producer/consumer/threat view: post, pre and Neg(post) per action."""
    actions = list(actions)
    return PctView(
        produces={a.id: a.post for a in actions},
        consumes={a.id: a.pre for a in actions},
        threatens={a.id: negate(a.post) for a in actions},
    )


def mtc_failure(sc: SelfContainedPlan) -> Optional[tuple[str, Literal]]:
    """
    First (consumer, condition) for which the MTC fails, or None.

    For every consumer and consumed condition there must be a producer
    ordered before the consumer, and every other threat must either follow
    the consumer or be followed by a producer that precedes the consumer.
    """
    view = pct_view(sc.plan.actions)
    order = sc.plan.order
    ids = sc.plan.ids
    for consumer in ids:
        for cond in sorted(view.consumes[consumer]):
            producers = [
                p for p in ids if cond in view.produces[p] and order.precedes(p, consumer)
            ]
            if not producers:
                logger.debug(f"No producer of {cond} before {consumer}")
                return consumer, cond
            for threat in ids:
                if threat == consumer or cond not in view.threatens[threat]:
                    continue
                if order.precedes(consumer, threat):
                    continue
                if any(order.precedes(threat, w) for w in producers):
                    continue
                logger.debug(f"{threat} threatens {cond} of {consumer} with no white knight")
                return consumer, cond
    return None


def mtc_valid(sc: SelfContainedPlan) -> bool:
    """Polynomial validity check of a self-contained plan."""
    return mtc_failure(sc) is None


def is_valid(plan: PartialOrderPlan, ppi: Ppi, validator: str = "mtc") -> bool:
    """
    Validity of plan for ppi with the chosen validator.

    Args:
        plan: The plan to check.
        ppi: The planning problem instance.
        validator: "mtc" (polynomial) or "bruteforce" (sorting enumeration).
    """
    if validator == "bruteforce":
        return po_valid_bruteforce(plan, ppi)
    return mtc_valid(make_self_contained(plan, ppi))


class MtcChecker:
    """
    The MTC compiled for a fixed action set and PPI.

    Orders are passed as successor bitmasks over the action indices; a_I
    and a_G are implicit (index n and n + 1) and book-end every order.
    """

    __slots__ = ("n", "ids", "requirements")

    def __init__(self, actions: Sequence[Action], ppi: Ppi) -> None:
        self.n = n = len(actions)
        self.ids = [a.id for a in actions]
        init_bit = 1 << n
        # (consumer index, producer mask, threat mask) per consumed literal
        self.requirements: list[tuple[int, int, int]] = []
        consumers = [(i, a.pre) for i, a in enumerate(actions)] + [(n + 1, ppi.goal)]
        for c, pre in consumers:
            for cond in sorted(pre):
                producers = init_bit if cond in ppi.init else 0
                threats = init_bit if cond.negate() in ppi.init else 0
                for j, a in enumerate(actions):
                    if j == c:
                        continue
                    if cond in a.post:
                        producers |= 1 << j
                    elif cond.negate() in a.post:
                        threats |= 1 << j
                self.requirements.append((c, producers, threats))

    def valid(self, succ: Sequence[int]) -> bool:
        """Validity of the closed order given by successor masks."""
        n = self.n
        inner = (1 << n) - 1
        init_bit = 1 << n
        pred = pred_masks(succ)
        for c, producers, threats in self.requirements:
            before = (inner if c == n + 1 else pred[c]) | init_bit
            support = producers & before
            if not support:
                return False
            after = 0 if c == n + 1 else succ[c]
            pending = threats & ~after
            while pending:
                low = pending & -pending
                t = low.bit_length() - 1
                pending ^= low
                later = inner if t == n else succ[t]
                if not support & later:
                    return False
        return True
