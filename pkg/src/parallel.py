"""
Parallel plans: non-concurrency relations, executions, DPPL and PRF.

Features:
    - post_exclusion / simple_concurrency: builders for the # relation
    - check_execution: verify release times against order and #
    - dppl: minimum execution of a definite plan (weighted longest path)
    - prf: minimum parallel deordering under simple concurrency
    - execution_to_definite_order: the definite reordering an execution induces

Release times are 0-based and makespan is max(r(a) + d(a)).

Example:
    >>> pp = ParallelPlan(plan=plan, nonconc=simple_concurrency(plan.actions))
    >>> dppl(prf(pp)).makespan
    25
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from src.exceptions import InvalidExecution, InvalidInput, NotDefinite, SimpleConcurrencyViolated
from src.models import (
    Action,
    Execution,
    ExecutionViolation,
    OrderRelation,
    Pair,
    ParallelPlan,
    Ppi,
)
from src.order import lexicographic_sort, to_digraph, transitive_closure, transitive_reduction
from src.semantics import is_valid, pct_view

logger = logging.getLogger(__name__)

__all__ = [
    "is_definite",
    "unordered_nonconc_pairs",
    "post_exclusion",
    "simple_concurrency",
    "satisfies_post_exclusion",
    "satisfies_simple_concurrency",
    "missing_simple_concurrency",
    "check_execution",
    "sequential_execution",
    "dppl",
    "prf",
    "execution_to_definite_order",
]


# =============================================================================
# NON-CONCURRENCY
# =============================================================================

def _pair(a: str, b: str) -> Pair:
    return (a, b) if a < b else (b, a)


def unordered_nonconc_pairs(pp: ParallelPlan) -> list[Pair]:
    """# pairs not ordered either way, sorted."""
    order = pp.plan.order
    return sorted(p for p in pp.nonconc if not order.comparable(*p))


def is_definite(pp: ParallelPlan) -> bool:
    """Every # pair is ordered one way or the other."""
    return not unordered_nonconc_pairs(pp)


def post_exclusion(actions: Iterable[Action]) -> frozenset[Pair]:
    """a # b iff one posts p and the other posts the negation of p."""
    actions = list(actions)
    pairs = set()
    for a, b in combinations(actions, 2):
        if any(lit.negate() in b.post for lit in a.post):
            pairs.add(_pair(a.id, b.id))
    return frozenset(pairs)


def simple_concurrency(actions: Iterable[Action]) -> frozenset[Pair]:
    """
    Smallest # relating producer/consumer, producer/threat and
    consumer/threat pairs of the same condition.
    """
    actions = list(actions)
    view = pct_view(actions)
    pairs = set()
    for a, b in combinations([x.id for x in actions], 2):
        for x, y in ((a, b), (b, a)):
            if (
                view.produces[x] & view.consumes[y]
                or view.produces[x] & view.threatens[y]
                or view.consumes[x] & view.threatens[y]
            ):
                pairs.add(_pair(a, b))
                break
    return frozenset(pairs)


def satisfies_post_exclusion(pp: ParallelPlan) -> bool:
    return post_exclusion(pp.plan.actions) <= pp.nonconc


def missing_simple_concurrency(pp: ParallelPlan) -> Optional[Pair]:
    """First pair required by simple concurrency that # lacks."""
    missing = sorted(simple_concurrency(pp.plan.actions) - pp.nonconc)
    return missing[0] if missing else None


def satisfies_simple_concurrency(pp: ParallelPlan) -> bool:
    return missing_simple_concurrency(pp) is None


# =============================================================================
# EXECUTIONS
# =============================================================================

def check_execution(pp: ParallelPlan, execution: Execution) -> int | ExecutionViolation:
    """
    Check release times against the order and the # relation.

    Args:
        pp: The parallel plan.
        execution: Release times for every action.

    Returns:
        The makespan, or the first violation found.
    """
    release = execution.release
    by_id = pp.plan.by_id
    for action_id in pp.plan.ids:
        if action_id not in release:
            return ExecutionViolation(pair=(action_id, action_id), condition="missing")

    def finish(action_id: str) -> int:
        return release[action_id] + by_id[action_id].duration

    for a, b in pp.plan.order.sorted_pairs():
        if finish(a) > release[b]:
            return ExecutionViolation(pair=(a, b), condition="order")
    for a, b in sorted(pp.nonconc):
        if finish(a) > release[b] and finish(b) > release[a]:
            return ExecutionViolation(pair=(a, b), condition="nonconc")
    return max((finish(a) for a in pp.plan.ids), default=0)


def sequential_execution(pp: ParallelPlan) -> Execution:
    """Back-to-back execution along the lexicographic topological sort."""
    release: dict[str, int] = {}
    t = 0
    for action_id in lexicographic_sort(pp.plan):
        release[action_id] = t
        t += pp.plan.action(action_id).duration
    return Execution.of(pp.plan, release)


def dppl(pp: ParallelPlan) -> Execution:
    """
    Minimum parallel execution of a definite plan.

    Every action is released at the weight of its longest incoming
    duration-weighted path.

    Raises:
        NotDefinite: If some # pair is unordered.
    """
    unordered = unordered_nonconc_pairs(pp)
    if unordered:
        raise NotDefinite(pair=unordered[0])

    graph = to_digraph(transitive_reduction(pp.plan.order), pp.plan.ids)
    release: dict[str, int] = {}
    for action_id in nx.lexicographical_topological_sort(graph):
        release[action_id] = max(
            (release[p] + pp.plan.action(p).duration for p in graph.predecessors(action_id)),
            default=0,
        )
    execution = Execution.of(pp.plan, release)
    logger.debug(f"DPPL makespan {execution.makespan}")
    return execution


# =============================================================================
# PRF
# =============================================================================

def prf(pp: ParallelPlan, strict: bool = False, ppi: Optional[Ppi] = None) -> ParallelPlan:
    """
    Keep exactly the ordered pairs that are also non-concurrent, then close.

    Under simple concurrency and a valid input this is a minimum parallel
    deordering, and it stays definite.

    Args:
        pp: A definite parallel plan.
        strict: Also verify simple concurrency and, given ppi, validity
            of input and output.
        ppi: Planning problem used by the strict validity checks.

    Raises:
        NotDefinite: If pp is not definite.
        SimpleConcurrencyViolated: In strict mode, if # lacks a required pair.
        InvalidInput: In strict mode, if input or output is invalid for ppi.
    """
    unordered = unordered_nonconc_pairs(pp)
    if unordered:
        raise NotDefinite(pair=unordered[0])
    if strict:
        missing = missing_simple_concurrency(pp)
        if missing:
            raise SimpleConcurrencyViolated(pair=missing)
        if ppi is not None and not is_valid(pp.plan, ppi):
            raise InvalidInput(reason="prf input is not valid")

    kept = [(a, b) for a, b in pp.plan.order.sorted_pairs() if pp.excludes(a, b)]
    result = pp.with_order(transitive_closure(kept))
    logger.info(f"PRF kept {len(result.plan.order)} of {len(pp.plan.order)} ordering pairs")

    if strict and ppi is not None and not is_valid(result.plan, ppi):
        raise InvalidInput(reason="prf output is not valid")
    return result


def execution_to_definite_order(pp: ParallelPlan, execution: Execution) -> ParallelPlan:
    """
    The definite plan an execution induces.

    a precedes b iff a finishes no later than b starts and a comes first
    under the key (release, positive duration, position in the
    lexicographic sort of the input order). The input order is kept, every
    # pair ends up ordered and the execution remains an execution of the
    result.

    Raises:
        InvalidExecution: If execution is not an execution of pp.
    """
    outcome = check_execution(pp, execution)
    if isinstance(outcome, ExecutionViolation):
        raise InvalidExecution(violation=str(outcome))

    release = execution.release
    position = {a: i for i, a in enumerate(lexicographic_sort(pp.plan))}
    actions = pp.plan.by_id

    def key(action_id: str) -> tuple[int, int, int]:
        return (release[action_id], 1 if actions[action_id].duration else 0, position[action_id])

    pairs = {
        (a, b)
        for a in actions
        for b in actions
        if a != b and execution.finish(actions[a]) <= release[b] and key(a) < key(b)
    }
    return pp.with_order(OrderRelation.trusted(pairs))
