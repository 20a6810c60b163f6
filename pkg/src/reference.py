"""
Reference deordering algorithms from the literature: VPC and KK.

Both are polynomial and both can return plans that are valid but not
minimal-constrained deorderings; the failure instances live in
src.generators and are certified against mld and mmcd_exact.

Features:
    - vpc: greedy last-producer causal ordering of a total-order plan
    - kk: validation structure over a topological sort, then keep only
      the input orderings it explains
    - causal_structure: the earliest-unclobbered-producer validation structure
    - primary_effects: goal atoms and their subgoal chain

Example:
    >>> sc = make_self_contained(plan, ppi)
    >>> out = kk(sc)
    >>> out.plan.order.pairs <= sc.plan.order.pairs
    True
"""

from __future__ import annotations

import logging
from typing import Optional

from src.exceptions import InvalidInput, NegativePrecondition, NotTotalOrder
from src.models import (
    GOAL_ID,
    INIT_ID,
    CausalLink,
    Literal,
    Pair,
    PrimaryEffectSet,
    SelfContainedPlan,
)
from src.order import lexicographic_sort, transitive_closure

logger = logging.getLogger(__name__)

__all__ = ["vpc", "kk", "causal_structure", "primary_effects"]


def _book_ends(ids: list[str]) -> set[Pair]:
    pairs = {(INIT_ID, GOAL_ID)}
    for action_id in ids:
        if action_id not in (INIT_ID, GOAL_ID):
            pairs.add((INIT_ID, action_id))
            pairs.add((action_id, GOAL_ID))
    return pairs


def primary_effects(sc: SelfContainedPlan) -> PrimaryEffectSet:
    """
    Positive postconditions that are goals or in the subgoal chain of a goal.

    An atom is primary if the goal requires it, or if some action posting
    a primary atom requires it. Each action's primary effects are its
    positive postconditions over primary atoms.
    """
    actions = [a for a in sc.plan.actions if a.id != GOAL_ID]
    primary = {lit.atom for lit in sc.plan.action(GOAL_ID).pre if not lit.negated}
    changed = True
    while changed:
        changed = False
        for action in actions:
            if any(not lit.negated and lit.atom in primary for lit in action.post):
                for lit in action.pre:
                    if not lit.negated and lit.atom not in primary:
                        primary.add(lit.atom)
                        changed = True
    effects = {
        a.id: frozenset(lit for lit in a.post if not lit.negated and lit.atom in primary)
        for a in actions
    }
    return PrimaryEffectSet(effects={k: v for k, v in effects.items() if v})


# =============================================================================
# VPC
# =============================================================================

def vpc(sc: SelfContainedPlan, primaries: Optional[PrimaryEffectSet] = None) -> SelfContainedPlan:
    """
    Convert a total-order plan into a partial-order plan, VPC style.

    For every precondition the last earlier producer is ordered before
    the consumer. An action posting a negation is ordered after every
    earlier consumer of the atom, and every earlier action posting the
    negation of a primary effect is ordered before the producer. a_I and
    a_G book-end the result, which is returned closed.

    Args:
        sc: A valid self-contained total-order plan with positive preconditions.
        primaries: Primary effects; defaults to primary_effects(sc).

    Returns:
        The reordered plan. It need not be a sub-order of the input.

    Raises:
        NotTotalOrder: If some pair of actions is unordered.
        NegativePrecondition: If an action or the goal requires a negative literal.
    """
    seq = lexicographic_sort(sc.plan)
    order = sc.plan.order
    for i, a in enumerate(seq):
        for b in seq[i + 1:]:
            if not order.comparable(a, b):
                raise NotTotalOrder(pair=(a, b))
    for action in sc.plan.actions:
        for lit in sorted(action.pre):
            if lit.negated:
                raise NegativePrecondition(action_id=action.id, literal=str(lit))

    primaries = primaries or primary_effects(sc)
    actions = [sc.plan.action(a) for a in seq]
    pairs = _book_ends(seq)

    for i, action in enumerate(actions):
        for cond in sorted(action.pre):
            producer = next((k for k in range(i - 1, -1, -1) if cond in actions[k].post), None)
            if producer is not None:
                pairs.add((actions[producer].id, action.id))
        for lit in sorted(action.post):
            if not lit.negated:
                continue
            atom = lit.negate()
            for k in range(i):
                if atom in actions[k].pre:
                    pairs.add((actions[k].id, action.id))
        for effect in sorted(primaries.of(action.id)):
            clobber = effect.negate()
            for k in range(1, i):
                if clobber in actions[k].post:
                    pairs.add((actions[k].id, action.id))

    result = sc.plan.with_order(transitive_closure(pairs))
    logger.info(f"VPC ordered {len(result.order)} pair(s) from {len(order)}")
    return SelfContainedPlan(plan=result)


# =============================================================================
# KK
# =============================================================================

def causal_structure(sc: SelfContainedPlan) -> list[CausalLink]:
    """
    One causal link per precondition, choosing the earliest producer.

    Works over the lexicographic topological sort of the plan. The
    producer is the earliest earlier action posting the condition with no
    action posting its negation strictly between it and the consumer.

    Raises:
        InvalidInput: If some precondition has no such producer.
    """
    actions = [sc.plan.action(a) for a in lexicographic_sort(sc.plan)]
    links: list[CausalLink] = []
    for i, consumer in enumerate(actions):
        for cond in sorted(consumer.pre):
            clobber = cond.negate()
            producer = None
            for k in range(i):
                if cond in actions[k].post and not any(
                    clobber in actions[j].post for j in range(k + 1, i)
                ):
                    producer = actions[k]
                    break
            if producer is None:
                raise InvalidInput(reason=f"no producer of {cond} for {consumer.id}")
            links.append(CausalLink(producer=producer.id, condition=cond, consumer=consumer.id))
    return links


def _kept(a: str, b: str, links: list[CausalLink], post: dict[str, frozenset[Literal]]) -> bool:
    if a == INIT_ID or b == GOAL_ID:
        return True
    for link in links:
        if link.producer == a and link.consumer == b:
            return True
        clobber = link.condition.negate()
        # consumer before threat, threat before producer
        if link.consumer == a and clobber in post[b]:
            return True
        if link.producer == b and clobber in post[a]:
            return True
    return False


def kk(sc: SelfContainedPlan) -> SelfContainedPlan:
    """
    Generalise the order of a valid plan from its validation structure.

    Keeps exactly the input pairs that book-end the plan, match a causal
    link, or keep a threat on the safe side of a link. On partial-order
    input the validation structure follows the lexicographic topological
    sort.

    Raises:
        InvalidInput: If the plan is not valid along that sort.
    """
    links = causal_structure(sc)
    logger.debug(f"Validation structure: {', '.join(str(link) for link in links)}")
    post = {a.id: a.post for a in sc.plan.actions}
    kept = [(a, b) for a, b in sc.plan.order.sorted_pairs() if _kept(a, b, links, post)]
    result = sc.plan.with_order(transitive_closure(kept))
    logger.info(f"KK kept {len(result.order)} of {len(sc.plan.order)} ordering pairs")
    return SelfContainedPlan(plan=result)
