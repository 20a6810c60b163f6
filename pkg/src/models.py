"""
Domain models for plan-order.

This module defines Pydantic models for type-safe data handling
throughout the plan ordering pipeline: literals and actions, order
relations, partial-order and parallel plans, executions, and the
result types produced by the oracles and generators.

All models are frozen. Orders are always stored transitively closed and
the non-concurrency relation is stored as sorted unordered pairs.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Any, Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Reserved ids for the initial and goal actions of self-contained plans
INIT_ID = "a_I"
GOAL_ID = "a_G"

# Atom names and action ids (alphanumeric plus a few separators)
IDENTIFIER_PATTERN = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.+\-]*$")

NEGATION_PREFIX = "!"

Pair = tuple[str, str]


def _check_identifier(value: str, what: str) -> str:
    if not IDENTIFIER_PATTERN.match(value):
        raise ValueError(f"invalid {what} {value!r}")
    return value


# =============================================================================
# LITERALS
# =============================================================================

class Literal(BaseModel):
    """
    A propositional atom, possibly negated.

    Double negation cannot be represented: parsing "!!p" yields p.

    Attributes:
        atom: Atom name.
        negated: Whether the literal is the negation of the atom.
    """

    model_config = ConfigDict(frozen=True)

    atom: str = Field(..., min_length=1, description="Atom name")
    negated: bool = Field(False, description="True for the negated literal")

    @field_validator("atom")
    @classmethod
    def validate_atom(cls, v: str) -> str:
        return _check_identifier(v, "atom")

    @classmethod
    def parse(cls, text: str) -> "Literal":
        """
        Parse the textual form "p" or "!p".

        Any run of leading "!" collapses by parity.

        Raises:
            ValueError: If the atom part is not a valid identifier.
        """
        stripped = text.strip()
        bangs = len(stripped) - len(stripped.lstrip(NEGATION_PREFIX))
        return cls(atom=stripped[bangs:], negated=bangs % 2 == 1)

    @classmethod
    def coerce(cls, value: Any) -> "Literal":
        """Accept a Literal, its string form, or a field mapping."""
        if isinstance(value, Literal):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls.model_validate(value)

    def negate(self) -> "Literal":
        return Literal(atom=self.atom, negated=not self.negated)

    @property
    def sort_key(self) -> tuple[str, bool]:
        return (self.atom, self.negated)

    def __lt__(self, other: "Literal") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"{NEGATION_PREFIX}{self.atom}" if self.negated else self.atom

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"


LiteralSet = frozenset[Literal]


def literal_set(values: Iterable[Any]) -> LiteralSet:
    """Build a literal set from Literals or their string forms."""
    return frozenset(Literal.coerce(v) for v in values)


def negate(lits: Iterable[Literal]) -> LiteralSet:
    """Neg(L): flip every literal."""
    return frozenset(lit.negate() for lit in lits)


def is_consistent(lits: Iterable[Literal]) -> bool:
    """True iff no atom occurs both negated and unnegated."""
    seen: dict[str, bool] = {}
    for lit in lits:
        if seen.setdefault(lit.atom, lit.negated) != lit.negated:
            return False
    return True


def format_literals(lits: Iterable[Literal]) -> list[str]:
    """Sorted textual form of a literal set."""
    return [str(lit) for lit in sorted(lits)]


# =============================================================================
# ACTIONS, ORDERS, PLANS
# =============================================================================

class Action(BaseModel):
    """
    An operator instance with pre- and postconditions and a duration.

    Identity is by id: two actions with the same conditions but
    different ids are different actions.

    Attributes:
        id: Unique action identifier.
        pre: Consistent precondition literals.
        post: Consistent postcondition literals.
        duration: Non-negative integer duration in time units.
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., description="Unique action identifier")
    pre: LiteralSet = Field(default_factory=frozenset, description="Preconditions")
    post: LiteralSet = Field(default_factory=frozenset, description="Postconditions")
    duration: int = Field(1, ge=0, description="Duration in time units")

    @field_validator("id")
    @classmethod
    def validate_id(cls, v: str) -> str:
        return _check_identifier(v, "action id")

    @field_validator("pre", "post", mode="before")
    @classmethod
    def coerce_literals(cls, v: Any) -> LiteralSet:
        return literal_set(v)

    @field_validator("pre", "post")
    @classmethod
    def validate_consistent(cls, v: LiteralSet) -> LiteralSet:
        if not is_consistent(v):
            raise ValueError(f"inconsistent literal set {format_literals(v)}")
        return v

    def with_duration(self, duration: int) -> "Action":
        return self.model_copy(update={"duration": duration})


class OrderRelation(BaseModel):
    """
    A strict partial order over action ids, stored transitively closed.

    Closed and irreflexive together imply acyclic, so the validator
    checks exactly those two properties. Build one from an arbitrary
    generating set with src.order.transitive_closure.

    Attributes:
        pairs: Ordered (before, after) id pairs.
    """

    model_config = ConfigDict(frozen=True)

    pairs: frozenset[Pair] = Field(default_factory=frozenset, description="Closed pair set")

    @model_validator(mode="after")
    def validate_closed(self) -> "OrderRelation":
        succ: dict[str, set[str]] = {}
        for a, b in self.pairs:
            if a == b:
                raise ValueError(f"reflexive pair ({a}, {b})")
            succ.setdefault(a, set()).add(b)
        for a, b in self.pairs:
            missing = succ.get(b, set()) - succ[a]
            if missing:
                raise ValueError(f"order not transitively closed at ({a}, {b})")
        return self

    @classmethod
    def trusted(cls, pairs: Iterable[Pair]) -> "OrderRelation":
        """Wrap pairs already known to be closed, skipping validation."""
        return cls.model_construct(pairs=frozenset(pairs))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def precedes(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs

    def comparable(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs or (b, a) in self.pairs


class PartialOrderPlan(BaseModel):
    """
    A set of actions with a strict partial order over their ids.

    Actions are kept sorted by id.

    Attributes:
        actions: The plan's actions.
        order: Closed order relation over the action ids.
    """

    model_config = ConfigDict(frozen=True)

    actions: tuple[Action, ...] = Field(default_factory=tuple, description="Actions sorted by id")
    order: OrderRelation = Field(default_factory=OrderRelation, description="Closed order")

    @field_validator("actions", mode="before")
    @classmethod
    def sort_actions(cls, v: Any) -> tuple[Any, ...]:
        items = list(v)
        return tuple(sorted(items, key=lambda a: a.id if isinstance(a, Action) else a["id"]))

    @model_validator(mode="after")
    def validate_references(self) -> "PartialOrderPlan":
        ids = [a.id for a in self.actions]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate action ids")
        known = set(ids)
        for a, b in self.order.pairs:
            if a not in known or b not in known:
                raise ValueError(f"order pair ({a}, {b}) references an unknown action")
        return self

    @cached_property
    def by_id(self) -> dict[str, Action]:
        return {a.id: a for a in self.actions}

    @property
    def ids(self) -> list[str]:
        return [a.id for a in self.actions]

    def action(self, action_id: str) -> Action:
        return self.by_id[action_id]

    def is_total(self) -> bool:
        n = len(self.actions)
        return len(self.order) == n * (n - 1) // 2

    def with_order(self, order: OrderRelation) -> "PartialOrderPlan":
        return PartialOrderPlan.model_construct(actions=self.actions, order=order)


class Ppi(BaseModel):
    """
    A planning problem instance: initial state and goal.

    Attributes:
        init: Consistent initial literals.
        goal: Consistent goal literals.
    """

    model_config = ConfigDict(frozen=True)

    init: LiteralSet = Field(default_factory=frozenset, description="Initial state")
    goal: LiteralSet = Field(default_factory=frozenset, description="Goal")

    @field_validator("init", "goal", mode="before")
    @classmethod
    def coerce_literals(cls, v: Any) -> LiteralSet:
        return literal_set(v)

    @field_validator("init", "goal")
    @classmethod
    def validate_consistent(cls, v: LiteralSet) -> LiteralSet:
        if not is_consistent(v):
            raise ValueError(f"inconsistent literal set {format_literals(v)}")
        return v


class SelfContainedPlan(BaseModel):
    """
    A plan with the dummy actions a_I and a_G encoding its PPI.

    a_I has no preconditions and posts the initial state; a_G requires the
    goal and posts nothing. a_I precedes and a_G follows every other action.
    """

    model_config = ConfigDict(frozen=True)

    plan: PartialOrderPlan = Field(..., description="Plan including a_I and a_G")

    @model_validator(mode="after")
    def validate_book_ends(self) -> "SelfContainedPlan":
        by_id = self.plan.by_id
        if INIT_ID not in by_id or GOAL_ID not in by_id:
            raise ValueError("self-contained plan needs a_I and a_G")
        if by_id[INIT_ID].pre or by_id[GOAL_ID].post:
            raise ValueError("a_I must have empty pre and a_G empty post")
        for action_id in by_id:
            if action_id != INIT_ID and not self.plan.order.precedes(INIT_ID, action_id):
                raise ValueError(f"a_I does not precede {action_id}")
            if action_id != GOAL_ID and not self.plan.order.precedes(action_id, GOAL_ID):
                raise ValueError(f"{action_id} does not precede a_G")
        return self

    @property
    def inner_ids(self) -> list[str]:
        return [i for i in self.plan.ids if i not in (INIT_ID, GOAL_ID)]


# =============================================================================
# PARALLEL PLANS & EXECUTIONS
# =============================================================================

class ParallelPlan(BaseModel):
    """
    A partial-order plan with a non-concurrency relation #.

    # is irreflexive and symmetric; it is stored as pairs (a, b) with a < b.

    Attributes:
        plan: The underlying partial-order plan.
        nonconc: Unordered pairs of actions that may not overlap in time.
    """

    model_config = ConfigDict(frozen=True)

    plan: PartialOrderPlan = Field(..., description="Underlying plan")
    nonconc: frozenset[Pair] = Field(default_factory=frozenset, description="The # relation")

    @field_validator("nonconc", mode="before")
    @classmethod
    def normalize_pairs(cls, v: Any) -> frozenset[Pair]:
        pairs = set()
        for pair in v:
            a, b = tuple(pair)
            if a == b:
                raise ValueError(f"non-concurrency must be irreflexive, got ({a}, {b})")
            pairs.add((a, b) if a < b else (b, a))
        return frozenset(pairs)

    @model_validator(mode="after")
    def validate_references(self) -> "ParallelPlan":
        known = set(self.plan.by_id)
        for a, b in self.nonconc:
            if a not in known or b not in known:
                raise ValueError(f"non-concurrency pair ({a}, {b}) references an unknown action")
        return self

    def excludes(self, a: str, b: str) -> bool:
        return ((a, b) if a < b else (b, a)) in self.nonconc

    def with_plan(self, plan: PartialOrderPlan) -> "ParallelPlan":
        return ParallelPlan.model_construct(plan=plan, nonconc=self.nonconc)

    def with_order(self, order: OrderRelation) -> "ParallelPlan":
        return self.with_plan(self.plan.with_order(order))


class Execution(BaseModel):
    """
    Release times for every action of a plan.

    Attributes:
        release: Non-negative release time per action id.
        makespan: Latest finishing time, max of release + duration.
    """

    model_config = ConfigDict(frozen=True)

    release: dict[str, int] = Field(default_factory=dict, description="Release times")
    makespan: int = Field(0, ge=0, description="Latest finishing time")

    @field_validator("release")
    @classmethod
    def validate_non_negative(cls, v: dict[str, int]) -> dict[str, int]:
        for action_id, t in v.items():
            if t < 0:
                raise ValueError(f"negative release time for {action_id}")
        return v

    @classmethod
    def of(cls, plan: PartialOrderPlan, release: dict[str, int]) -> "Execution":
        """Build an execution, deriving its makespan from the plan's durations."""
        makespan = max((release[a.id] + a.duration for a in plan.actions), default=0)
        return cls(release=dict(sorted(release.items())), makespan=makespan)

    def finish(self, action: Action) -> int:
        return self.release[action.id] + action.duration


class ExecutionViolation(BaseModel):
    """
    Why a release-time map fails to be a parallel execution.

    Attributes:
        pair: The offending action pair.
        condition: "order" for a precedence violation, "nonconc" for overlap
            of a # pair, "missing" for an action without release time.
    """

    model_config = ConfigDict(frozen=True)

    pair: Pair = Field(..., description="Offending pair")
    condition: str = Field(..., description="order, nonconc or missing")

    def __str__(self) -> str:
        a, b = self.pair
        if self.condition == "order":
            return f"{a} must finish before {b} starts"
        if self.condition == "nonconc":
            return f"{a} # {b} overlap"
        return f"{a} has no release time"


class PctView(BaseModel):
    """
    Producer/consumer/threat view of a set of actions.

    Attributes:
        produces: Literals each action produces (its post).
        consumes: Literals each action consumes (its pre).
        threatens: Literals each action threatens (negation of its post).
    """

    model_config = ConfigDict(frozen=True)

    produces: dict[str, LiteralSet] = Field(default_factory=dict)
    consumes: dict[str, LiteralSet] = Field(default_factory=dict)
    threatens: dict[str, LiteralSet] = Field(default_factory=dict)


# =============================================================================
# REFERENCE ALGORITHMS
# =============================================================================

class CausalLink(BaseModel):
    """A producer supplying a condition to a consumer."""

    model_config = ConfigDict(frozen=True)

    producer: str = Field(..., description="Producing action id")
    condition: Literal = Field(..., description="Supplied literal")
    consumer: str = Field(..., description="Consuming action id")

    def __str__(self) -> str:
        return f"<{self.producer}, {self.condition}, {self.consumer}>"


class PrimaryEffectSet(BaseModel):
    """
    Positive postconditions singled out as primary per action.

    Attributes:
        effects: Primary effect literals per action id.
    """

    model_config = ConfigDict(frozen=True)

    effects: dict[str, LiteralSet] = Field(default_factory=dict)

    @field_validator("effects", mode="before")
    @classmethod
    def coerce_effects(cls, v: Any) -> dict[str, LiteralSet]:
        return {k: literal_set(lits) for k, lits in dict(v).items()}

    @field_validator("effects")
    @classmethod
    def validate_positive(cls, v: dict[str, LiteralSet]) -> dict[str, LiteralSet]:
        for action_id, lits in v.items():
            if any(lit.negated for lit in lits):
                raise ValueError(f"primary effects of {action_id} must be positive")
        return v

    def of(self, action_id: str) -> LiteralSet:
        return self.effects.get(action_id, frozenset())


# =============================================================================
# ORACLES & GENERATORS
# =============================================================================

class OracleBudget(BaseModel):
    """
    Limits for exponential searches.

    Exceeding either limit aborts with BudgetExceeded.
    """

    model_config = ConfigDict(frozen=True)

    max_actions: int = Field(..., gt=0, description="Largest plan searched")
    max_nodes: int = Field(..., gt=0, description="Search-node cap")


class OracleAnswer(BaseModel):
    """
    Optimum and witness of an exact oracle.

    Attributes:
        problem: Oracle name (mmcd, mmcr, ppl, mmpd, mmpr).
        optimum: Order size or makespan.
        order: Optimal order, when the problem optimises over orders.
        execution: Optimal execution, when the problem optimises makespan.
        nodes: Search nodes expanded.
    """

    model_config = ConfigDict(frozen=True)

    problem: str = Field(..., description="Oracle name")
    optimum: int = Field(..., ge=0, description="Optimal value")
    order: Optional[OrderRelation] = Field(None, description="Witness order")
    execution: Optional[Execution] = Field(None, description="Witness execution")
    nodes: int = Field(0, ge=0, description="Search nodes expanded")


class CertifiedInstance(BaseModel):
    """
    A generated instance with the answers its construction guarantees.

    Attributes:
        name: Generator name.
        ppi: The planning problem.
        pplan: The generated parallel plan.
        certificate: Expected values keyed by problem name.
        witness: Witness plan (reordering/deordering) where the construction supplies one.
        witness_execution: Execution of the witness plan.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Generator name")
    ppi: Ppi = Field(..., description="Planning problem instance")
    pplan: ParallelPlan = Field(..., description="Generated parallel plan")
    certificate: dict[str, Any] = Field(default_factory=dict, description="Expected values")
    witness: Optional[ParallelPlan] = Field(None, description="Witness plan")
    witness_execution: Optional[Execution] = Field(None, description="Witness execution")


class ActionRecord(BaseModel):
    """On-disk form of an action."""

    id: str
    pre: list[str] = Field(default_factory=list)
    post: list[str] = Field(default_factory=list)
    duration: int = Field(1, ge=0)


class InstanceDocument(BaseModel):
    """
    Versioned on-disk form of a PPI plus parallel plan.

    Literals are strings with "!" marking negation; order may be any
    generating set and is closed on load; nonconc holds unordered pairs.
    """

    model_config = ConfigDict(extra="forbid")

    format_version: int = Field(1, description="Document format version")
    atoms: list[str] = Field(default_factory=list)
    actions: list[ActionRecord] = Field(default_factory=list)
    init: list[str] = Field(default_factory=list)
    goal: list[str] = Field(default_factory=list)
    order: list[tuple[str, str]] = Field(default_factory=list)
    nonconc: list[tuple[str, str]] = Field(default_factory=list)
    meta: dict[str, Any] = Field(default_factory=dict)
