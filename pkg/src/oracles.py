"""
Exact exponential oracles for the NP-hard ordering problems.

Features:
    - mmcd_exact: minimum-constrained deordering
    - mmcr_exact: minimum-constrained reordering (labeled poset enumeration)
    - ppl_exact: minimum parallel execution (branch and bound over # orientations)
    - mmpd_exact: minimum parallel deordering
    - mmpr_bounded / mmpr_exact: minimum parallel reordering (event-driven schedule search)

Every search counts nodes against an OracleBudget and raises
BudgetExceeded instead of returning a partial answer. Witnesses are
deterministic: the same input always yields the same order and release
times, but not necessarily the lexicographically least optimal ones.

Any superset of a valid order is valid, and closure size as well as
parallel length only shrink with the order, so both deordering optima
are attained at minimal valid deorderings. Those are found by choosing,
for every consumed condition, a producer and a resolution of each
threat among the pairs of the input order.

Example:
    >>> answer = mmpd_exact(pp, ppi)
    >>> answer.optimum, answer.execution.makespan
    (25, 25)
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Optional, Sequence

from config.settings import settings
from src.exceptions import BudgetExceeded, InvalidInput, NotDefinite
from src.models import (
    Execution,
    Literal,
    OracleAnswer,
    OracleBudget,
    OrderRelation,
    ParallelPlan,
    PartialOrderPlan,
    Ppi,
)
from src.order import add_edge, bits, cover_indices, pred_masks, succ_masks
from src.parallel import simple_concurrency
from src.semantics import MtcChecker

logger = logging.getLogger(__name__)

# (finish time, action index) of actions still running at an event
Running = tuple[tuple[int, int], ...]

__all__ = [
    "default_budget",
    "mmcd_exact",
    "mmcr_exact",
    "count_posets",
    "ppl_exact",
    "mmpd_exact",
    "mmpr_bounded",
    "mmpr_witness",
    "mmpr_exact",
    "mmpr_enumerate",
]


def default_budget(problem: str = "oracle") -> OracleBudget:
    """Budget from settings; mmcr has its own tighter defaults."""
    if problem == "mmcr":
        return OracleBudget(
            max_actions=settings.MMCR_MAX_ACTIONS, max_nodes=settings.MMCR_MAX_NODES
        )
    return OracleBudget(max_actions=settings.ORACLE_MAX_ACTIONS, max_nodes=settings.ORACLE_MAX_NODES)


# =============================================================================
# SHARED PLUMBING
# =============================================================================

class _Counter:
    """Search-node counter enforcing a budget."""

    __slots__ = ("nodes", "limit")

    def __init__(self, budget: OracleBudget) -> None:
        self.nodes = 0
        self.limit = budget.max_nodes

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(limit_name="max_nodes", limit=self.limit)


def _guard(size: int, budget: OracleBudget) -> None:
    if size > budget.max_actions:
        raise BudgetExceeded(
            f"Plan has {size} actions, above the oracle guard",
            limit_name="max_actions",
            limit=budget.max_actions,
        )


def _size(succ: Sequence[int], measure: str) -> int:
    if measure == "reduction":
        return len(cover_indices(succ))
    return sum(bin(s).count("1") for s in succ)


def _pair_list(succ: Sequence[int], ids: Sequence[str]) -> list[tuple[str, str]]:
    return sorted((ids[i], ids[j]) for i, s in enumerate(succ) for j in bits(s))


def _relation(succ: Sequence[int], ids: Sequence[str]) -> OrderRelation:
    return OrderRelation.trusted(_pair_list(succ, ids))


def _longest(succ: Sequence[int], dur: Sequence[int]) -> tuple[list[int], int]:
    """Earliest release times and makespan of a closed order."""
    pred = pred_masks(succ)
    # in a closed order, predecessors of a predecessor are a strict subset
    order = sorted(range(len(succ)), key=lambda i: bin(pred[i]).count("1"))
    release = [0] * len(succ)
    for i in order:
        release[i] = max((release[p] + dur[p] for p in bits(pred[i])), default=0)
    makespan = max((release[i] + dur[i] for i in range(len(succ))), default=0)
    return release, makespan


def _execution(plan: PartialOrderPlan, release: Sequence[int]) -> Execution:
    return Execution.of(plan, dict(zip(plan.ids, release)))


def _index_nonconc(pp: ParallelPlan) -> list[tuple[int, int]]:
    index = {a: i for i, a in enumerate(pp.plan.ids)}
    return sorted((index[a], index[b]) for a, b in pp.nonconc)


# =============================================================================
# DEORDERINGS
# =============================================================================

def _valid_suborders(
    start: tuple[int, ...],
    checker: MtcChecker,
    counter: _Counter,
) -> Iterator[tuple[int, ...]]:
    """Every valid closed sub-order of start, reached by covering-pair removals."""
    known: dict[tuple[int, ...], bool] = {start: True}
    stack = [start]
    while stack:
        succ = stack.pop()
        counter.tick()
        for i, j in cover_indices(succ):
            child = tuple(s & ~(1 << j) if k == i else s for k, s in enumerate(succ))
            if child not in known:
                known[child] = checker.valid(child)
                if known[child]:
                    stack.append(child)
        yield succ


def _justified_suborders(
    start: tuple[int, ...],
    checker: MtcChecker,
    counter: _Counter,
) -> list[tuple[int, ...]]:
    """
    Closures of justification choices drawn from start.

    Each consumed condition needs a producer ordered before its consumer,
    and each threat needs to follow the consumer or to precede a white
    knight that precedes the consumer. Choosing one option per decision
    from the pairs of start and closing gives a valid sub-order; every
    valid sub-order contains one of these, so they include all minimal
    valid deorderings. A decision already met by the pairs chosen so far
    is not branched on.
    """
    n = len(start)
    init, goal = n, n + 1
    inner = (1 << n) - 1
    pred = pred_masks(start)

    def link(x: int, y: int) -> tuple[tuple[int, int], ...]:
        # pairs with a_I or a_G are implicit
        return () if x == init or y == goal else ((x, y),)

    decisions: list[list[tuple[tuple[int, int], ...]]] = []
    for c, producers, threats in checker.requirements:
        before = (inner if c == goal else pred[c]) | (1 << init)
        support = [p for p in bits(producers & before)]
        decisions.append([link(p, c) for p in support])
        for t in bits(threats):
            options = []
            if c != goal and t != init and (start[c] >> t) & 1:
                options.append(((c, t),))
            for w in support:
                if w != init and (t == init or (start[t] >> w) & 1):
                    options.append(link(t, w) + link(w, c))
            decisions.append(options)
    if any(not options for options in decisions):
        raise InvalidInput(reason="input plan is not valid")

    leaves: set[tuple[int, ...]] = set()
    seen: set[tuple[int, tuple[int, ...]]] = set()

    def holds(acc: tuple[int, ...], pairs: tuple[tuple[int, int], ...]) -> bool:
        return all((acc[x] >> y) & 1 for x, y in pairs)

    def rec(k: int, acc: tuple[int, ...]) -> None:
        while k < len(decisions) and any(holds(acc, o) for o in decisions[k]):
            k += 1
        if (k, acc) in seen:
            return
        seen.add((k, acc))
        counter.tick()
        if k == len(decisions):
            leaves.add(acc)
            return
        for option in decisions[k]:
            nxt = acc
            for x, y in option:
                nxt = add_edge(nxt, x, y)
            rec(k + 1, nxt)

    rec(0, tuple([0] * n))
    return sorted(leaves)


def mmcd_exact(
    plan: PartialOrderPlan,
    ppi: Ppi,
    budget: Optional[OracleBudget] = None,
    measure: Optional[str] = None,
) -> OracleAnswer:
    """
    Minimum order size over all valid deorderings.

    Closure size only grows with the order, so justification closures
    suffice; counting reduction pairs is not monotone and walks every
    valid sub-order instead.

    Raises:
        InvalidInput: If plan is not valid for ppi.
        BudgetExceeded: If the plan or the search is too large.
    """
    budget = budget or default_budget()
    measure = measure or settings.ORDER_SIZE_MEASURE
    _guard(len(plan.actions), budget)
    checker = MtcChecker(plan.actions, ppi)
    start = succ_masks(plan)
    if not checker.valid(start):
        raise InvalidInput(reason="mmcd requires a valid input plan")

    counter = _Counter(budget)
    ids = plan.ids
    if measure == "reduction":
        candidates: Iterable[tuple[int, ...]] = _valid_suborders(start, checker, counter)
    else:
        candidates = _justified_suborders(start, checker, counter)

    best: Optional[tuple[int, list[tuple[str, str]], tuple[int, ...]]] = None
    for succ in candidates:
        candidate = (_size(succ, measure), _pair_list(succ, ids), succ)
        if best is None or candidate[:2] < best[:2]:
            best = candidate

    assert best is not None
    logger.info(f"mmcd optimum {best[0]} after {counter.nodes} nodes")
    return OracleAnswer(
        problem="mmcd", optimum=best[0], order=_relation(best[2], ids), nodes=counter.nodes
    )


# =============================================================================
# REORDERINGS
# =============================================================================

def _posets(n: int, counter: _Counter) -> Iterator[tuple[int, ...]]:
    """
    Every labeled strict partial order on n elements, as closed successor masks.

    Element k is added below a down-closed set D and above an up-closed
    set U of the earlier elements, with everything in D already below
    everything in U; each poset arises exactly once.
    """
    succ = [0] * n
    pred = [0] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(succ)
            return
        full = (1 << k) - 1
        downs = [d for d in range(full + 1) if all(pred[x] & ~d == 0 for x in bits(d))]
        ups = [u for u in range(full + 1) if all(succ[x] & ~u == 0 for x in bits(u))]
        for down in downs:
            above = full
            for x in bits(down):
                above &= succ[x]
            for up in ups:
                if up & ~above:
                    continue
                counter.tick()
                for x in bits(down):
                    succ[x] |= 1 << k
                for x in bits(up):
                    pred[x] |= 1 << k
                succ[k], pred[k] = up, down
                yield from extend(k + 1)
                for x in bits(down):
                    succ[x] &= ~(1 << k)
                for x in bits(up):
                    pred[x] &= ~(1 << k)
                succ[k] = pred[k] = 0

    yield from extend(0)


def count_posets(n: int, budget: Optional[OracleBudget] = None) -> int:
    """Number of labeled partial orders on n elements (1, 1, 3, 19, 219, 4231, ...)."""
    counter = _Counter(budget or default_budget("mmcr"))
    return sum(1 for _ in _posets(n, counter))


def mmcr_exact(
    plan: PartialOrderPlan,
    ppi: Ppi,
    budget: Optional[OracleBudget] = None,
    measure: Optional[str] = None,
) -> OracleAnswer:
    """
    Minimum order size over all valid orders of the plan's actions.

    Raises:
        InvalidInput: If no order of the actions is valid.
        BudgetExceeded: Above the (small) default guards.
    """
    budget = budget or default_budget("mmcr")
    measure = measure or settings.ORDER_SIZE_MEASURE
    _guard(len(plan.actions), budget)
    checker = MtcChecker(plan.actions, ppi)
    counter = _Counter(budget)
    ids = plan.ids

    best: Optional[tuple[int, list[tuple[str, str]], tuple[int, ...]]] = None
    for succ in _posets(len(ids), counter):
        if not checker.valid(succ):
            continue
        candidate = (_size(succ, measure), _pair_list(succ, ids), succ)
        if best is None or candidate[:2] < best[:2]:
            best = candidate

    if best is None:
        raise InvalidInput(reason="no valid order of these actions exists")
    logger.info(f"mmcr optimum {best[0]} after {counter.nodes} nodes")
    return OracleAnswer(
        problem="mmcr", optimum=best[0], order=_relation(best[2], ids), nodes=counter.nodes
    )


# =============================================================================
# PARALLEL LENGTH
# =============================================================================

def _ppl_search(
    succ: tuple[int, ...],
    dur: Sequence[int],
    nonconc: Sequence[tuple[int, int]],
    counter: _Counter,
) -> tuple[int, list[int], tuple[int, ...]]:
    """
    Branch and bound over orientations of the unordered # pairs.

    Pairs are oriented in sorted order, a -> b first. A node is pruned
    when its critical path already exceeds the best makespan; ties are
    explored so the least release vector wins.

    Returns:
        (makespan, release times, oriented closed order)
    """
    bound = sum(dur)
    best: Optional[tuple[int, list[int], tuple[int, ...]]] = None

    def rec(k: int, cur: tuple[int, ...]) -> None:
        nonlocal bound, best
        counter.tick()
        release, lb = _longest(cur, dur)
        if lb > bound:
            return
        while k < len(nonconc):
            a, b = nonconc[k]
            if not ((cur[a] >> b) & 1 or (cur[b] >> a) & 1):
                break
            k += 1
        if k == len(nonconc):
            if best is None or (lb, release) < (best[0], best[1]):
                best = (lb, release, cur)
                bound = lb
            return
        a, b = nonconc[k]
        rec(k + 1, add_edge(cur, a, b))
        rec(k + 1, add_edge(cur, b, a))

    rec(0, succ)
    assert best is not None
    return best


def ppl_exact(pp: ParallelPlan, budget: Optional[OracleBudget] = None) -> OracleAnswer:
    """
    Minimum makespan over all parallel executions of pp.

    Raises:
        BudgetExceeded: If the plan or the search is too large.
    """
    budget = budget or default_budget()
    _guard(len(pp.plan.actions), budget)
    counter = _Counter(budget)
    dur = [a.duration for a in pp.plan.actions]
    makespan, release, oriented = _ppl_search(
        succ_masks(pp.plan), dur, _index_nonconc(pp), counter
    )
    logger.info(f"ppl optimum {makespan} after {counter.nodes} nodes")
    return OracleAnswer(
        problem="ppl",
        optimum=makespan,
        order=_relation(oriented, pp.plan.ids),
        execution=_execution(pp.plan, release),
        nodes=counter.nodes,
    )


def mmpd_exact(
    pp: ParallelPlan,
    ppi: Ppi,
    budget: Optional[OracleBudget] = None,
    definite_only: bool = False,
) -> OracleAnswer:
    """
    Minimum parallel length over all valid deorderings.

    Args:
        pp: A valid parallel plan.
        ppi: The planning problem instance.
        budget: Search limits.
        definite_only: Only consider deorderings that are themselves definite.

    Returns:
        The optimum, the witness deordering and its minimum execution.

    Raises:
        InvalidInput: If pp is not valid for ppi.
        NotDefinite: With definite_only, if pp itself is not definite.
        BudgetExceeded: If the plan or the search is too large.
    """
    budget = budget or default_budget()
    _guard(len(pp.plan.actions), budget)
    checker = MtcChecker(pp.plan.actions, ppi)
    start = succ_masks(pp.plan)
    if not checker.valid(start):
        raise InvalidInput(reason="mmpd requires a valid input plan")

    counter = _Counter(budget)
    ids = pp.plan.ids
    dur = [a.duration for a in pp.plan.actions]
    nonconc = _index_nonconc(pp)

    # definite deorderings keep every # pair in its input orientation
    kept: list[tuple[int, int]] = []
    if definite_only:
        for a, b in nonconc:
            if (start[a] >> b) & 1:
                kept.append((a, b))
            elif (start[b] >> a) & 1:
                kept.append((b, a))
            else:
                raise NotDefinite(pair=(ids[a], ids[b]))

    best: Optional[tuple[int, list[tuple[str, str]], tuple[int, ...], list[int]]] = None
    for leaf in _justified_suborders(start, checker, counter):
        succ = leaf
        if definite_only:
            for a, b in kept:
                if not (succ[a] >> b) & 1:
                    succ = add_edge(succ, a, b)
            release, makespan = _longest(succ, dur)
        else:
            makespan, release, _ = _ppl_search(succ, dur, nonconc, counter)
        candidate = (makespan, _pair_list(succ, ids), succ, release)
        if best is None or candidate[:2] < best[:2]:
            best = candidate

    assert best is not None
    logger.info(f"mmpd optimum {best[0]} after {counter.nodes} nodes")
    return OracleAnswer(
        problem="mmpd",
        optimum=best[0],
        order=_relation(best[2], ids),
        execution=_execution(pp.plan, best[3]),
        nodes=counter.nodes,
    )


def mmpr_enumerate(
    pp: ParallelPlan,
    ppi: Ppi,
    budget: Optional[OracleBudget] = None,
) -> OracleAnswer:
    """
    Minimum parallel length over all valid reorderings by poset enumeration.

    Only feasible for a handful of actions; used to cross-check mmpr_exact.
    """
    budget = budget or default_budget("mmcr")
    _guard(len(pp.plan.actions), budget)
    checker = MtcChecker(pp.plan.actions, ppi)
    counter = _Counter(budget)
    dur = [a.duration for a in pp.plan.actions]
    nonconc = _index_nonconc(pp)

    best: Optional[tuple[int, list[int], tuple[int, ...]]] = None
    for succ in _posets(len(dur), counter):
        if not checker.valid(succ):
            continue
        makespan, release, oriented = _ppl_search(succ, dur, nonconc, counter)
        if best is None or makespan < best[0]:
            best = (makespan, release, oriented)

    if best is None:
        raise InvalidInput(reason="no valid order of these actions exists")
    return OracleAnswer(
        problem="mmpr",
        optimum=best[0],
        order=_relation(best[2], pp.plan.ids),
        execution=_execution(pp.plan, best[1]),
        nodes=counter.nodes,
    )


# =============================================================================
# PARALLEL REORDERING
# =============================================================================

class _ScheduleSearch:
    """
    Search for release times of makespan at most a bound whose induced
    order is valid.

    Actions start at time 0 or when some running action finishes. At each
    such event, zero-duration actions are sequenced first, then a set of
    positive-duration actions starts. The induced order relates a to b
    iff a finishes no later than b starts and a was placed first.

    When # contains every simple-concurrency pair, overlapping actions are
    independent, so the plan is valid iff the placement sequence executes;
    preconditions are then checked on the fly, failures are memoized and
    a positive action that could have started at the previous event is
    not started at the current one. Otherwise every complete schedule is
    checked with the MTC.
    """

    def __init__(self, pp: ParallelPlan, ppi: Ppi, bound: int, counter: _Counter) -> None:
        actions = pp.plan.actions
        self.plan = pp.plan
        self.n = n = len(actions)
        self.bound = bound
        self.counter = counter
        self.full = (1 << n) - 1
        self.dur = [a.duration for a in actions]
        self.checker = MtcChecker(actions, ppi)
        self.forward = simple_concurrency(actions) <= pp.nonconc

        index = {a: i for i, a in enumerate(pp.plan.ids)}
        self.nc = [0] * n
        for a, b in pp.nonconc:
            self.nc[index[a]] |= 1 << index[b]
            self.nc[index[b]] |= 1 << index[a]

        # literal bit 2k is atom k, bit 2k + 1 its negation
        atoms = sorted(
            {lit.atom for a in actions for lit in a.pre | a.post} | {lit.atom for lit in ppi.init | ppi.goal}
        )
        atom_index = {atom: k for k, atom in enumerate(atoms)}

        def mask(lits: Iterable[Literal]) -> int:
            m = 0
            for lit in lits:
                m |= 1 << (2 * atom_index[lit.atom] + (1 if lit.negated else 0))
            return m

        self.pre = [mask(a.pre) for a in actions]
        self.add = [mask(a.post) for a in actions]
        self.kill = [mask(lit.negate() for lit in a.post) for a in actions]
        self.init = mask(ppi.init)
        self.goal = mask(ppi.goal)
        self.producers: dict[int, int] = {}
        for i in range(n):
            for bit in bits(self.add[i]):
                self.producers[bit] = self.producers.get(bit, 0) | (1 << i)

        self.zeros = [i for i in range(n) if self.dur[i] == 0]
        self.positives = [i for i in range(n) if self.dur[i] > 0]
        self.cliques = self._greedy_cliques()

        self.release = [0] * n
        self.sequence: list[int] = []
        self.failed: set[tuple[int, int, int, Running, int, int]] = set()

    def _greedy_cliques(self) -> list[int]:
        cliques: set[int] = set()
        ranked = sorted(range(self.n), key=lambda i: (-self.dur[i], i))
        for seed in ranked:
            clique = 1 << seed
            for j in ranked:
                if j != seed and all((self.nc[j] >> k) & 1 for k in bits(clique)):
                    clique |= 1 << j
            if clique & (clique - 1):
                cliques.add(clique)
        return sorted(cliques)

    # -- bounds ---------------------------------------------------------------

    def _feasible(self, t: int, placed: int, state: int, running: Running) -> bool:
        remaining = self.full & ~placed
        for i in bits(remaining):
            if t + self.dur[i] > self.bound:
                return False
        for clique in self.cliques:
            rest = sum(self.dur[i] for i in bits(clique & remaining))
            residual = max((f - t for f, i in running if (clique >> i) & 1), default=0)
            if t + residual + rest > self.bound:
                return False
        if self.forward:
            needed = self.goal
            for i in bits(remaining):
                needed |= self.pre[i]
            for bit in bits(needed & ~state):
                if not self.producers.get(bit, 0) & remaining:
                    return False
        return True

    # -- search ---------------------------------------------------------------

    def run(self) -> bool:
        if self.n == 0:
            return self.goal & ~self.init == 0
        return self._event(0, 0, self.init, (), self.init, 0)

    def _event(
        self,
        t: int,
        placed: int,
        state: int,
        running: Running,
        prev_state: int,
        window: int,
    ) -> bool:
        self.counter.tick()
        key = (t, placed, state, running, prev_state, window)
        if self.forward and key in self.failed:
            return False
        if self._feasible(t, placed, state, running) and self._zero_phase(
            t, placed, state, running, prev_state, window, 0
        ):
            return True
        if self.forward:
            self.failed.add(key)
        return False

    def _zero_phase(
        self,
        t: int,
        placed: int,
        state: int,
        running: Running,
        prev_state: int,
        window: int,
        zeros: int,
    ) -> bool:
        busy = 0
        for _, i in running:
            busy |= 1 << i
        for z in self.zeros:
            if (placed >> z) & 1 or self.nc[z] & busy:
                continue
            if self.forward and self.pre[z] & ~state:
                continue
            self.counter.tick()
            self.release[z] = t
            self.sequence.append(z)
            after = (state & ~self.kill[z]) | self.add[z]
            if self._zero_phase(
                t, placed | (1 << z), after, running, prev_state, window, zeros | (1 << z)
            ):
                return True
            self.sequence.pop()
        return self._start_phase(t, placed, state, running, prev_state, window, zeros, 0, 0, busy)

    def _start_phase(
        self,
        t: int,
        placed: int,
        state: int,
        running: Running,
        prev_state: int,
        window: int,
        zeros: int,
        started: int,
        k: int,
        busy: int,
    ) -> bool:
        if k == len(self.positives):
            return self._advance(t, placed, state, running, window_next=zeros | started | busy, started=started)
        a = self.positives[k]
        if self._can_start(a, t, placed, state, prev_state, window | zeros | started, busy | started):
            self.counter.tick()
            self.release[a] = t
            self.sequence.append(a)
            after = (state & ~self.kill[a]) | self.add[a]
            if self._start_phase(
                t, placed | (1 << a), after, running, prev_state, window, zeros,
                started | (1 << a), k + 1, busy,
            ):
                return True
            self.sequence.pop()
        return self._start_phase(
            t, placed, state, running, prev_state, window, zeros, started, k + 1, busy
        )

    def _can_start(
        self, a: int, t: int, placed: int, state: int, prev_state: int, passed: int, overlap: int
    ) -> bool:
        if (placed >> a) & 1 or t + self.dur[a] > self.bound or self.nc[a] & overlap:
            return False
        if not self.forward:
            return True
        if self.pre[a] & ~state:
            return False
        # could have started at the previous event instead
        if t > 0 and not self.pre[a] & ~prev_state and not self.nc[a] & passed:
            return False
        return True

    def _advance(
        self, t: int, placed: int, state: int, running: Running, window_next: int, started: int
    ) -> bool:
        if placed == self.full:
            if self.forward:
                return not self.goal & ~state
            return self.checker.valid(self.induced_order())
        finishing = list(running) + [(t + self.dur[i], i) for i in bits(started)]
        if not finishing:
            return False
        t_next = min(f for f, _ in finishing)
        still = tuple(sorted((f, i) for f, i in finishing if f > t_next))
        return self._event(t_next, placed, state, still, state, window_next)

    # -- witness --------------------------------------------------------------

    def induced_order(self) -> tuple[int, ...]:
        position = {a: p for p, a in enumerate(self.sequence)}
        succ = [0] * self.n
        for a in self.sequence:
            finish = self.release[a] + self.dur[a]
            for b in self.sequence:
                if position[a] < position[b] and finish <= self.release[b]:
                    succ[a] |= 1 << b
        return tuple(succ)


def mmpr_witness(
    pp: ParallelPlan,
    ppi: Ppi,
    bound: int,
    budget: Optional[OracleBudget] = None,
) -> Optional[OracleAnswer]:
    """
    A valid reordering with a parallel execution of makespan at most bound.

    Returns:
        The witness order and execution, or None if none exists.

    Raises:
        BudgetExceeded: If the plan or the search is too large.
    """
    budget = budget or default_budget()
    _guard(len(pp.plan.actions), budget)
    search = _ScheduleSearch(pp, ppi, bound, _Counter(budget))
    found = search.run()
    logger.debug(
        f"mmpr bound {bound}: {'feasible' if found else 'infeasible'} "
        f"after {search.counter.nodes} nodes"
    )
    if not found:
        return None
    execution = _execution(pp.plan, search.release)
    return OracleAnswer(
        problem="mmpr",
        optimum=execution.makespan,
        order=_relation(search.induced_order(), pp.plan.ids),
        execution=execution,
        nodes=search.counter.nodes,
    )


def mmpr_bounded(
    pp: ParallelPlan,
    ppi: Ppi,
    bound: int,
    budget: Optional[OracleBudget] = None,
) -> bool:
    """Whether some valid reordering has a parallel execution of makespan <= bound."""
    return mmpr_witness(pp, ppi, bound, budget) is not None


def mmpr_exact(
    pp: ParallelPlan,
    ppi: Ppi,
    budget: Optional[OracleBudget] = None,
) -> OracleAnswer:
    """
    Minimum parallel length over all valid reorderings.

    Sweeps the bound upward from the heaviest action until mmpr_bounded
    succeeds; the sequential length always succeeds for a solvable plan.

    Raises:
        InvalidInput: If no order of the actions is valid.
        BudgetExceeded: If the plan or the search is too large.
    """
    budget = budget or default_budget()
    _guard(len(pp.plan.actions), budget)
    dur = [a.duration for a in pp.plan.actions]
    nodes = 0
    for bound in range(max(dur, default=0), sum(dur) + 1):
        remaining = OracleBudget(
            max_actions=budget.max_actions, max_nodes=max(budget.max_nodes - nodes, 1)
        )
        search = _ScheduleSearch(pp, ppi, bound, _Counter(remaining))
        found = search.run()
        nodes += search.counter.nodes
        if found:
            execution = _execution(pp.plan, search.release)
            logger.info(f"mmpr optimum {execution.makespan} after {nodes} nodes")
            return OracleAnswer(
                problem="mmpr",
                optimum=execution.makespan,
                order=_relation(search.induced_order(), pp.plan.ids),
                execution=execution,
                nodes=nodes,
            )
    raise InvalidInput(reason="no valid order of these actions exists")
