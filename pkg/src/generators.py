"""
Certified instance generators.

Every generator returns a CertifiedInstance: the PPI, a valid parallel
plan and the answers its construction guarantees. Plans are checked
with the MTC before they are returned; where the construction supplies
a witness reordering, its validity and execution are checked too.

Features:
    - gen_min_cover: minimum cover as minimum-constrained deordering
    - gen_coloring: graph colouring as minimum parallel execution
    - gen_3sat: 3SAT as bounded parallel reordering (toggling unary actions)
    - gen_gap: plans whose best deordering is far longer than their best reordering
    - gen_toy_car: the toy-car assembly plan
    - gen_vpc_failure / gen_kk_failure: where VPC and KK miss a minimal deordering

Example:
    >>> inst = gen_toy_car()
    >>> inst.certificate["mmpd"], inst.certificate["mmpr"]
    (25, 16)
"""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import Any, Iterable, Mapping, Optional, Sequence

import networkx as nx

from config.settings import settings
from src.exceptions import (
    BudgetExceeded,
    ElementNotInS,
    InvalidInput,
    MalformedClause,
    UnknownActionName,
)
from src.models import (
    Action,
    CertifiedInstance,
    Execution,
    Literal,
    OrderRelation,
    ParallelPlan,
    PartialOrderPlan,
    Ppi,
)
from src.order import chain, total_order_plan
from src.parallel import check_execution, simple_concurrency
from src.semantics import is_valid, to_valid

logger = logging.getLogger(__name__)

__all__ = [
    "gen_min_cover",
    "min_cover_size",
    "gen_coloring",
    "named_graph",
    "chromatic_number",
    "gen_3sat",
    "is_satisfiable",
    "is_toggling",
    "is_unary",
    "gen_gap",
    "gap_action_count",
    "gen_toy_car",
    "toy_car_sequence",
    "TOY_CAR_DURATIONS",
    "TOY_CAR_ORDER",
    "TOP_FIRST_ORDER",
    "WHEELS_FIRST_ORDER",
    "gen_vpc_failure",
    "gen_kk_failure",
]


# =============================================================================
# SHARED
# =============================================================================

def _action(action_id: str, pre: Iterable[str], post: Iterable[str], duration: int = 1) -> Action:
    return Action(id=action_id, pre=frozenset(pre), post=frozenset(post), duration=duration)


def _sequential(actions: Sequence[Action], nonconc: Optional[Iterable[tuple[str, str]]] = None) -> ParallelPlan:
    """Total-order plan in the given sequence; # defaults to simple concurrency."""
    plan = total_order_plan(actions)
    pairs = simple_concurrency(actions) if nonconc is None else frozenset(nonconc)
    return ParallelPlan(plan=plan, nonconc=pairs)


def _certified(
    name: str,
    ppi: Ppi,
    pp: ParallelPlan,
    certificate: dict[str, Any],
    release: Optional[Mapping[str, int]] = None,
) -> CertifiedInstance:
    """
    Check the plan and the optional layered witness, then wrap them up.

    The witness orders a before b iff a finishes no later than b starts.

    Raises:
        InvalidInput: If the plan or the witness fails its check.
    """
    if not is_valid(pp.plan, ppi):
        raise InvalidInput(reason=f"{name}: generated plan is not valid")

    witness = None
    execution = None
    if release is not None:
        by_id = pp.plan.by_id
        pairs = {
            (a, b)
            for a in by_id
            for b in by_id
            if a != b and release[a] + by_id[a].duration <= release[b]
        }
        witness = pp.with_order(OrderRelation.trusted(pairs))
        execution = Execution.of(witness.plan, dict(release))
        if not is_valid(witness.plan, ppi):
            raise InvalidInput(reason=f"{name}: witness reordering is not valid")
        outcome = check_execution(witness, execution)
        if not isinstance(outcome, int):
            raise InvalidInput(reason=f"{name}: witness execution fails: {outcome}")

    logger.info(f"Generated {name}: {len(pp.plan.actions)} actions, certificate {certificate}")
    return CertifiedInstance(
        name=name,
        ppi=ppi,
        pplan=pp,
        certificate=certificate,
        witness=witness,
        witness_execution=execution,
    )


# =============================================================================
# MINIMUM COVER
# =============================================================================

def min_cover_size(ground: Iterable[str], subsets: Sequence[Iterable[str]]) -> Optional[int]:
    """Size of a smallest cover by brute force, or None if there is none."""
    ground = frozenset(ground)
    sets = [frozenset(s) for s in subsets]
    for size in range(len(sets) + 1):
        for chosen in combinations(sets, size):
            if ground <= frozenset().union(*chosen):
                return size
    return None


def gen_min_cover(ground: Iterable[str], subsets: Sequence[Iterable[str]]) -> CertifiedInstance:
    """
    Minimum cover encoded as minimum-constrained deordering.

    One action per subset posts its elements; a final action requires the
    whole ground set and posts r. The total order lists the subset actions
    first. Every valid deordering orders a cover before the final action.

    Args:
        ground: The ground set S (atom names).
        subsets: The collection C; every member must be a subset of S.

    Raises:
        ElementNotInS: If a subset has an element outside S.
        InvalidInput: If C does not cover S.
    """
    atoms = sorted(set(ground))
    for subset in subsets:
        for element in sorted(subset):
            if element not in atoms:
                raise ElementNotInS(element=element)
    optimum = min_cover_size(atoms, subsets)
    if optimum is None:
        raise InvalidInput(reason="subsets do not cover the ground set")

    width = len(str(len(subsets)))
    actions = [_action(f"a{i + 1:0{width}d}", [], sorted(s)) for i, s in enumerate(subsets)]
    actions.append(_action("aS", atoms, ["r"]))
    ppi = Ppi(init=frozenset(), goal=frozenset({Literal(atom="r")}))
    return _certified("cover", ppi, _sequential(actions), {"mmcd": optimum})


# =============================================================================
# GRAPH COLOURING
# =============================================================================

def named_graph(name: str) -> nx.Graph:
    """
    K3, C5, petersen, edge or empty:<n>.

    Raises:
        InvalidInput: For any other name.
    """
    if name == "K3":
        return nx.complete_graph(3)
    if name == "C5":
        return nx.cycle_graph(5)
    if name == "petersen":
        return nx.petersen_graph()
    if name == "edge":
        return nx.complete_graph(2)
    if name.startswith("empty:"):
        try:
            return nx.empty_graph(int(name.split(":", 1)[1]))
        except ValueError:
            pass
    raise InvalidInput(reason=f"unknown graph {name!r}")


def chromatic_number(graph: nx.Graph) -> int:
    """Smallest k admitting a proper k-colouring, by backtracking."""
    nodes = sorted(graph.nodes, key=lambda v: (-graph.degree(v), v))
    if not nodes:
        return 0

    def colourable(k: int) -> bool:
        colour: dict[Any, int] = {}

        def assign(idx: int) -> bool:
            if idx == len(nodes):
                return True
            v = nodes[idx]
            used = {colour[u] for u in graph.neighbors(v) if u in colour}
            # symmetry: never open more than one fresh colour
            limit = min(k, max(colour.values(), default=-1) + 2)
            for c in range(limit):
                if c not in used:
                    colour[v] = c
                    if assign(idx + 1):
                        return True
                    del colour[v]
            return False

        return assign(0)

    return next(k for k in range(1, len(nodes) + 1) if colourable(k))


def gen_coloring(graph: nx.Graph, totalize: bool = False) -> CertifiedInstance:
    """
    Graph colouring as minimum parallel execution.

    Vertex v posts p_v and q_v and the negation of q_u for every neighbour
    u, so neighbours exclude each other and # is exactly the edge set.
    Durations are unit; the minimum makespan is the chromatic number.

    Args:
        graph: A simple undirected graph.
        totalize: Order the vertex actions totally by id; the certificate
            then concerns mmpd instead of ppl.
    """
    nodes = sorted(graph.nodes)
    width = len(str(max(len(nodes) - 1, 0)))
    name = {v: f"{i:0{width}d}" for i, v in enumerate(nodes)}
    actions = []
    for v in nodes:
        post = [f"p{name[v]}", f"q{name[v]}"] + [f"!q{name[u]}" for u in graph.neighbors(v)]
        actions.append(_action(f"v{name[v]}", [], post))
    nonconc = {(f"v{name[u]}", f"v{name[v]}") for u, v in graph.edges}
    ppi = Ppi(init=frozenset(), goal=frozenset(Literal(atom=f"p{name[v]}") for v in nodes))

    order = chain([a.id for a in sorted(actions, key=lambda a: a.id)]) if totalize else OrderRelation()
    pp = ParallelPlan(plan=PartialOrderPlan(actions=tuple(actions), order=order), nonconc=nonconc)
    problem = "mmpd" if totalize else "ppl"
    return _certified("coloring", ppi, pp, {problem: chromatic_number(graph)})


# =============================================================================
# 3SAT
# =============================================================================

def is_toggling(action: Action) -> bool:
    """Every postcondition's negation is a precondition."""
    return all(lit.negate() in action.pre for lit in action.post)


def is_unary(action: Action) -> bool:
    """Exactly one postcondition."""
    return len(action.post) == 1


def _check_clauses(
    clauses: Sequence[Sequence[int]], num_atoms: Optional[int], allow_repeats: bool
) -> int:
    n = num_atoms or max((abs(lit) for clause in clauses for lit in clause), default=0)
    for index, clause in enumerate(clauses):
        if len(clause) != 3 or any(lit == 0 or abs(lit) > n for lit in clause):
            raise MalformedClause(index=index)
        if not allow_repeats and len(set(clause)) != 3:
            raise MalformedClause("Clause repeats a literal", index=index)
    return n


def is_satisfiable(clauses: Sequence[Sequence[int]], num_atoms: int) -> Optional[tuple[bool, ...]]:
    """First satisfying assignment in (False, True) product order, or None."""
    for assignment in product((False, True), repeat=num_atoms):
        if all(any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in clauses):
            return assignment
    return None


def _sat_actions(
    clauses: Sequence[Sequence[int]], n: int, strict_typo: bool
) -> tuple[list[Action], list[str]]:
    """Atom and clause gadgets, in their valid block order."""
    actions: list[Action] = []
    for i in range(1, n + 1):
        actions += [
            _action(f"A{i}+", [f"!q{i}"], [f"q{i}"]),
            _action(f"A{i}T", [f"!p{i}T", f"q{i}"], [f"p{i}T"]),
            _action(f"A{i}-", [f"q{i}"], [f"!q{i}"]),
            _action(f"A{i}F", [f"!p{i}F", f"!q{i}"], [f"p{i}F"]),
        ]
    atoms: list[str] = []
    for i, clause in enumerate(clauses, start=1):
        # the third r atom as printed (always clause 1) under strict_typo
        r3 = "r1.3" if strict_typo else f"r{i}.3"
        r = {1: f"r{i}.1", 2: f"r{i}.2", 3: r3}
        for j, lit in enumerate(clause, start=1):
            star = f"p{abs(lit)}{'T' if lit > 0 else 'F'}"
            guards = [r[h] if h == j else f"!{r[h]}" for h in (1, 2, 3)]
            actions += [
                _action(f"C{i}.{j}+", [f"!r{i}.{j}"], [f"r{i}.{j}"]),
                _action(f"B{i}.{j}+", [star, *guards, f"!c{i}.{j}"], [f"c{i}.{j}"]),
                _action(f"C{i}.{j}-", [f"r{i}.{j}"], [f"!r{i}.{j}"]),
            ]
            atoms += [f"c{i}.{j}", f"r{i}.{j}"]
    return actions, atoms


def _sat_release(clauses: Sequence[Sequence[int]], assignment: Sequence[bool]) -> dict[str, int]:
    release: dict[str, int] = {}
    for i, value in enumerate(assignment, start=1):
        times = (0, 1, 2, 3) if value else (1, 2, 3, 0)
        for suffix, t in zip(("+", "T", "-", "F"), times):
            release[f"A{i}{suffix}"] = t
    for i, clause in enumerate(clauses, start=1):
        first = next(j for j, lit in enumerate(clause, start=1) if assignment[abs(lit) - 1] == (lit > 0))
        slots = [first] + [j for j in (1, 2, 3) if j != first]
        for h, j in enumerate(slots, start=1):
            release[f"C{i}.{j}+"] = 2 * h - 1
            release[f"B{i}.{j}+"] = 2 * h
            release[f"C{i}.{j}-"] = 2 * h + 1
    return release


def gen_3sat(
    clauses: Sequence[Sequence[int]],
    num_atoms: Optional[int] = None,
    allow_repeats: bool = False,
    strict_typo: bool = False,
) -> CertifiedInstance:
    """
    3SAT as parallel reordering with toggling unary actions.

    Literals are non-zero integers: k for p_k, -k for its negation. The
    plan has 4n + 9m unit actions under simple concurrency and can be
    reordered to makespan 8 iff the clauses are satisfiable; for a
    satisfiable input the layered witness of makespan 8 is attached.

    Args:
        clauses: Three literal slots per clause.
        num_atoms: n; defaults to the largest atom index used.
        allow_repeats: Accept clauses that repeat a literal.
        strict_typo: Use r_{1,3} in every clause's third slot guards, as printed.

    Raises:
        MalformedClause: If a clause does not have three valid slots.
        InvalidInput: If the block order does not execute (possible under strict_typo).
    """
    n = _check_clauses(clauses, num_atoms, allow_repeats)
    actions, clause_atoms = _sat_actions(clauses, n, strict_typo)
    q_atoms = [f"p{i}F" for i in range(1, n + 1)] + [f"p{i}T" for i in range(1, n + 1)]
    q_atoms += [f"q{i}" for i in range(1, n + 1)] + clause_atoms

    init = frozenset(Literal(atom=a, negated=True) for a in q_atoms)
    goal = {Literal(atom=f"p{i}{x}") for i in range(1, n + 1) for x in ("F", "T")}
    goal |= {Literal(atom=f"q{i}", negated=True) for i in range(1, n + 1)}
    for atom in clause_atoms:
        goal.add(Literal(atom=atom, negated=atom.startswith("r")))
    ppi = Ppi(init=init, goal=frozenset(goal))

    if not to_valid(actions, ppi.init, ppi.goal):
        raise InvalidInput(reason="3sat block order does not execute")

    assignment = is_satisfiable(clauses, n)
    certificate: dict[str, Any] = {"actions": 4 * n + 9 * len(clauses)}
    release = None
    if assignment is not None:
        certificate.update(satisfiable=True, mmpr_at_most=8)
        if not strict_typo:
            release = _sat_release(clauses, assignment)
    else:
        certificate.update(satisfiable=False, mmpr_at_least=9)
    return _certified("3sat", ppi, _sequential(actions), certificate, release)


# =============================================================================
# DEORDER / REORDER GAP
# =============================================================================

def gap_action_count(k: int, n: int) -> int:
    """3n^k plus 2n^i for every 1 <= i < k."""
    return 3 * n**k + sum(2 * n**i for i in range(1, k))


def _gap_segment(
    level: int, j: int, n: int, start: int, actions: list[Action], release: dict[str, int]
) -> None:
    """Append segment j of the given level in plan order, with its witness release times."""
    if level == 1:
        threat = [f"!q0_{j - 1}"] if j > 1 else []
        actions += [
            _action(f"a1_{j}", [f"p1_{j}"], [f"p0_{j}", *threat]),
            _action(f"b0_{j}", [f"p0_{j}"], [f"q0_{j}"]),
            _action(f"c1_{j}", [f"q0_{j}"], [f"q1_{j}"]),
        ]
        release.update({f"a1_{j}": start, f"b0_{j}": start + 1, f"c1_{j}": start + 2})
        return

    below = level - 1
    block = range((j - 1) * n + 1, j * n + 1)
    last = (j - 1) * n
    threat = [f"!q{below}_{last}"] if last >= 1 else []
    actions.append(
        _action(f"a{level}_{j}", [f"p{level}_{j}"], [*(f"p{below}_{i}" for i in block), *threat])
    )
    release[f"a{level}_{j}"] = start
    for i in block:
        _gap_segment(below, i, n, start + 1, actions, release)
    actions.append(_action(f"c{level}_{j}", [f"q{below}_{i}" for i in block], [f"q{level}_{j}"]))
    release[f"c{level}_{j}"] = start + 2 * level


def gen_gap(k: int, n: int) -> CertifiedInstance:
    """
    A plan whose only deordering is itself but which reorders to makespan 2k + 1.

    Level-k segments wrap n level-(k-1) segments between an action that
    enables them and one that collects their results; level-1 segments
    are triples. Each segment's opening action clobbers the result of the
    previous segment, which forces the total order in any deordering but
    not in a reordering. Unit durations under simple concurrency.

    Args:
        k: Nesting depth, at least 1.
        n: Segments per level, at least 1.

    Raises:
        InvalidInput: If k or n is not positive.
        BudgetExceeded: If the plan would exceed GAP_MAX_ACTIONS actions.
    """
    if k < 1 or n < 1:
        raise InvalidInput(reason="gap family needs k >= 1 and n >= 1")
    count = gap_action_count(k, n)
    if count > settings.GAP_MAX_ACTIONS:
        raise BudgetExceeded(
            f"Gap instance would have {count} actions",
            limit_name="GAP_MAX_ACTIONS",
            limit=settings.GAP_MAX_ACTIONS,
        )

    actions: list[Action] = []
    release: dict[str, int] = {}
    for j in range(1, n + 1):
        _gap_segment(k, j, n, 0, actions, release)

    ppi = Ppi(
        init=frozenset(Literal(atom=f"p{k}_{j}") for j in range(1, n + 1)),
        goal=frozenset(Literal(atom=f"q{k}_{j}") for j in range(1, n + 1)),
    )
    certificate = {"actions": count, "mmpd": count, "mmpr_at_most": 2 * k + 1}
    return _certified("gap", ppi, _sequential(actions), certificate, release)


# =============================================================================
# TOY CAR
# =============================================================================

TOY_CAR_DURATIONS: dict[str, int] = {
    "MvT1": 1,
    "MvW2": 1,
    "MvC1": 2,
    "MvC2": 2,
    "MvS": 3,
    "MtT": 7,
    "MtW": 4,
    "PAC": 5,
    "IT": 4,
}

# move the chassis, parts and air container; mount top and wheels; pressurize and inflate
_TOY_CAR_CONDITIONS: dict[str, tuple[list[str], list[str]]] = {
    "MvT1": ([], ["t1"]),
    "MvW2": ([], ["w2"]),
    "MvC1": ([], ["c1", "!w2", "!cs"]),
    "MvC2": ([], ["c2", "!cs"]),
    "MvS": ([], ["cs", "!c1", "!c2"]),
    "MtT": (["c1", "t1"], ["top", "jig"]),
    "MtW": (["c2", "w2", "inf"], ["whl", "!jig"]),
    "PAC": ([], ["air"]),
    "IT": (["air"], ["inf"]),
}

TOY_CAR_ORDER = ("MvW2", "PAC", "IT", "MvC2", "MtW", "MvT1", "MvC1", "MtT", "MvS")
TOP_FIRST_ORDER = ("MvS", "MvT1", "MvC1", "MtT", "MvW2", "PAC", "IT", "MvC2", "MtW")
WHEELS_FIRST_ORDER = ("MvS", "MvC1", "MvC2", "MvW2", "PAC", "IT", "MtW", "MvT1", "MtT")

_SLOW_PUMP = {"PAC": 2, "MvT1": 8}


def gen_toy_car(durations: Optional[Mapping[str, int]] = None) -> CertifiedInstance:
    """
    The toy-car assembly plan with optional duration overrides.

    Args:
        durations: Overrides keyed by action name.

    Returns:
        The total-order plan under simple concurrency. The certificate
        holds the sequential makespan and, for the default durations and
        for the {PAC: 2, MvT1: 8} variant, the known optima and the
        parallel lengths of the top-first and wheels-first reorderings
        after PRF. In the slow-pump variant the 17 is certified for
        WHEELS_FIRST_ORDER: every deordering of TOY_CAR_ORDER has
        parallel length at least 22, so 17 needs a reordering.

    Raises:
        UnknownActionName: If an override names no toy-car action.
    """
    overrides = dict(durations or {})
    for name in sorted(overrides):
        if name not in TOY_CAR_DURATIONS:
            raise UnknownActionName(name=name)
    table = {**TOY_CAR_DURATIONS, **overrides}

    by_name = {
        name: _action(name, pre, post, table[name]) for name, (pre, post) in _TOY_CAR_CONDITIONS.items()
    }
    actions = [by_name[name] for name in TOY_CAR_ORDER]
    ppi = Ppi(init=frozenset(), goal=frozenset({Literal(atom="top"), Literal(atom="whl")}))

    certificate: dict[str, Any] = {"sequential": sum(table.values())}
    if table == TOY_CAR_DURATIONS:
        certificate.update(mmpd=25, mmpr=16, top_first=16, wheels_first=20)
    elif table == {**TOY_CAR_DURATIONS, **_SLOW_PUMP}:
        certificate.update(mmpd=22, mmpr=17, top_first=19, wheels_first=17)
    return _certified("toycar", ppi, _sequential(actions), certificate)


def toy_car_sequence(instance: CertifiedInstance, sequence: Sequence[str]) -> ParallelPlan:
    """
    The toy-car plan totally ordered along another sequence.

    Raises:
        UnknownActionName: If sequence is not a permutation of the actions.
    """
    ids = set(instance.pplan.plan.ids)
    for name in sequence:
        if name not in ids:
            raise UnknownActionName(name=name)
    if len(set(sequence)) != len(ids) or len(sequence) != len(ids):
        raise UnknownActionName("Sequence must list every action once")
    return instance.pplan.with_order(chain(list(sequence)))


# =============================================================================
# REFERENCE ALGORITHM FAILURES
# =============================================================================

def gen_vpc_failure(variant: str = "abc") -> CertifiedInstance:
    """
    Two sortings of one action set on which VPC behaves differently.

    a posts p and q, b needs p and posts q and r, c needs q and posts s;
    the goal is {r, s}. From a, c, b VPC finds the minimum deordering
    {a < b, a < c}; from a, b, c it keeps b < c as well, which mld then drops.

    Args:
        variant: "acb" or "abc".

    Raises:
        InvalidInput: For any other variant.
    """
    actions = {
        "a": _action("a", [], ["p", "q"]),
        "b": _action("b", ["p"], ["q", "r"]),
        "c": _action("c", ["q"], ["s"]),
    }
    if variant not in ("acb", "abc"):
        raise InvalidInput(reason=f"unknown vpc failure variant {variant!r}")
    ppi = Ppi(init=frozenset(), goal=frozenset({Literal(atom="r"), Literal(atom="s")}))
    certificate = {"mmcd": 2, "vpc": 2 if variant == "acb" else 3, "vpc_minimal": variant == "acb"}
    return _certified("vpcfail", ppi, _sequential([actions[x] for x in variant]), certificate)


def gen_kk_failure() -> CertifiedInstance:
    """
    A total-order plan on which KK keeps a redundant causal ordering.

    A posts p and s, B posts p, q and t, C posts r and D needs p and q to
    post u; the goal is {r, s, t, u}. KK links D's p to the earliest
    producer A and keeps A < D and B < D, though B alone supports D.
    """
    actions = [
        _action("A", [], ["p", "s"]),
        _action("B", [], ["p", "q", "t"]),
        _action("C", [], ["r"]),
        _action("D", ["p", "q"], ["u"]),
    ]
    ppi = Ppi(init=frozenset(), goal=frozenset(Literal(atom=x) for x in "rstu"))
    return _certified("kkfail", ppi, _sequential(actions), {"kk": 2, "mld_after_kk": 1, "mmcd": 1})
