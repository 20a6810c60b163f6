"""
Order relations: closure, reduction and topological sorts.

The substrate every other module builds on. Orders are handled as
networkx DAGs for closure, reduction and cycle reporting; a small
set of bitmask helpers serves the exponential searches that need to
close thousands of candidate orders.

Example:
    >>> from src.order import transitive_closure, transitive_reduction
    >>> order = transitive_closure({("a", "b"), ("b", "c")})
    >>> sorted(order.pairs)
    [('a', 'b'), ('a', 'c'), ('b', 'c')]
    >>> sorted(transitive_reduction(order))
    [('a', 'b'), ('b', 'c')]
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx

from config.settings import settings
from src.exceptions import CyclicOrder
from src.models import (
    Action,
    OrderRelation,
    Pair,
    PartialOrderPlan,
    is_consistent,
    negate,
)

logger = logging.getLogger(__name__)

__all__ = [
    "transitive_closure",
    "transitive_reduction",
    "topological_sorts",
    "lexicographic_sort",
    "is_consistent",
    "negate",
    "order_size",
    "chain",
    "total_order_plan",
    "to_digraph",
    "succ_masks",
    "bits",
    "pred_masks",
    "cover_indices",
    "add_edge",
]


def to_digraph(pairs: Iterable[Pair], nodes: Optional[Iterable[str]] = None) -> nx.DiGraph:
    """Build a DiGraph over the given nodes with one edge per pair."""
    graph = nx.DiGraph()
    if nodes is not None:
        graph.add_nodes_from(nodes)
    graph.add_edges_from(pairs)
    return graph


def transitive_closure(pairs: Iterable[Pair]) -> OrderRelation:
    """
    Smallest transitive superset of an acyclic pair set.

    Args:
        pairs: Generating (before, after) pairs.

    Returns:
        The closed OrderRelation.

    Raises:
        CyclicOrder: If pairs contain a reflexive pair or a cycle.
    """
    pairs = list(pairs)
    for a, b in pairs:
        if a == b:
            raise CyclicOrder(f"Reflexive pair ({a}, {b})", cycle=[(a, b)])
    graph = to_digraph(pairs)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [(u, v) for u, v in nx.find_cycle(graph)]
        raise CyclicOrder("Order relation contains a cycle", cycle=cycle)
    closed = nx.transitive_closure_dag(graph)
    return OrderRelation.trusted(closed.edges())


def transitive_reduction(order: OrderRelation) -> frozenset[Pair]:
    """
    The unique minimal pair set whose closure equals order.

    Args:
        order: A closed order relation.

    Returns:
        The covering pairs of the order.
    """
    if not order.pairs:
        return frozenset()
    reduced = nx.transitive_reduction(to_digraph(order.pairs))
    return frozenset(reduced.edges())


def order_size(order: OrderRelation, measure: Optional[str] = None) -> int:
    """
    |order| under the configured size measure.

    Closure pairs by default; reduction pairs when ORDER_SIZE_MEASURE
    (or measure) is "reduction".
    """
    measure = measure or settings.ORDER_SIZE_MEASURE
    if measure == "reduction":
        return len(transitive_reduction(order))
    return len(order)


def chain(ids: Sequence[str]) -> OrderRelation:
    """Closed total order following the sequence."""
    return OrderRelation.trusted(
        (ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))
    )


def total_order_plan(actions: Sequence[Action]) -> PartialOrderPlan:
    """Total-order plan executing the actions in the given sequence."""
    return PartialOrderPlan(actions=tuple(actions), order=chain([a.id for a in actions]))


def lexicographic_sort(plan: PartialOrderPlan) -> list[str]:
    """The lexicographically least topological sort of the plan's ids."""
    graph = to_digraph(transitive_reduction(plan.order), plan.ids)
    return list(nx.lexicographical_topological_sort(graph))


def topological_sorts(plan: PartialOrderPlan) -> Iterator[list[Action]]:
    """
    Yield every total order extending plan.order exactly once.

    At each step the ready actions are tried in id order, so the
    enumeration is lexicographic and reproducible.

    Args:
        plan: The partial-order plan.

    Yields:
        Action sequences.
    """
    ids = plan.ids
    preds = {i: 0 for i in ids}
    succs: dict[str, list[str]] = {i: [] for i in ids}
    for a, b in transitive_reduction(plan.order):
        preds[b] += 1
        succs[a].append(b)

    prefix: list[str] = []
    placed: set[str] = set()

    def extend() -> Iterator[list[Action]]:
        if len(prefix) == len(ids):
            yield [plan.action(i) for i in prefix]
            return
        for i in ids:
            if i in placed or preds[i]:
                continue
            placed.add(i)
            prefix.append(i)
            for j in succs[i]:
                preds[j] -= 1
            yield from extend()
            for j in succs[i]:
                preds[j] += 1
            prefix.pop()
            placed.discard(i)

    yield from extend()


# =============================================================================
# BITMASK ORDERS
# =============================================================================
# succ[i] has bit j set iff action i precedes action j, indices following
# plan.ids. Searches keep these as tuples so they hash.

def succ_masks(plan: PartialOrderPlan) -> tuple[int, ...]:
    """Successor masks of the plan's (closed) order."""
    index = {a: i for i, a in enumerate(plan.ids)}
    succ = [0] * len(index)
    for a, b in plan.order.pairs:
        succ[index[a]] |= 1 << index[b]
    return tuple(succ)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def pred_masks(succ: Sequence[int]) -> list[int]:
    """Predecessor masks of a successor-mask order."""
    pred = [0] * len(succ)
    for i, s in enumerate(succ):
        for j in bits(s):
            pred[j] |= 1 << i
    return pred


def cover_indices(succ: Sequence[int]) -> list[tuple[int, int]]:
    """Covering pairs of a closed order, as index pairs."""
    pred = pred_masks(succ)
    return [(i, j) for i, s in enumerate(succ) for j in bits(s) if not s & pred[j]]


def add_edge(succ: Sequence[int], x: int, y: int) -> tuple[int, ...]:
    """Close succ after adding x -> y (y must not precede x)."""
    reach = (1 << y) | succ[y]
    return tuple(s | reach if i == x or (s >> x) & 1 else s for i, s in enumerate(succ))
