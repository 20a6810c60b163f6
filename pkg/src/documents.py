"""
Instance documents and schedule rendering.

An instance document is a JSON object holding a PPI and a parallel plan.
On disk the order is its transitive reduction and every list is sorted,
so saving a loaded document reproduces it byte for byte; in memory the
order is closed.

Canonical form:
    - keys sorted, two-space indent, trailing newline
    - atoms: every atom mentioned, sorted
    - actions: sorted by id; pre/post as sorted literal strings ("!" negates)
    - order: sorted covering pairs
    - nonconc: sorted pairs, each written (smaller id, larger id)

Example:
    >>> ppi, pp = loads(dumps(ppi, pp))
    >>> print(render_schedule(pp, dppl(pp)).splitlines()[-1])
    makespan=25
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import ValidationError

from src.exceptions import CyclicOrder, InvalidExecution, ParseError, SemanticError
from src.models import (
    Action,
    ActionRecord,
    Execution,
    ExecutionViolation,
    InstanceDocument,
    Literal,
    ParallelPlan,
    PartialOrderPlan,
    Ppi,
    format_literals,
)
from src.order import transitive_closure, transitive_reduction
from src.parallel import check_execution

logger = logging.getLogger(__name__)

__all__ = [
    "FORMAT_VERSION",
    "DEFAULT_CHART_WIDTH",
    "to_document",
    "from_document",
    "parse_document",
    "dumps",
    "loads",
    "load",
    "load_with_meta",
    "save",
    "dumps_execution",
    "loads_execution",
    "render_schedule",
    "read_text",
    "write_text",
]

FORMAT_VERSION = 1

# columns in a Gantt chart before time units are grouped
DEFAULT_CHART_WIDTH = 120

PathLike = Union[str, Path]


# =============================================================================
# CONVERSION
# =============================================================================

def to_document(ppi: Ppi, pp: ParallelPlan, meta: Optional[dict[str, Any]] = None) -> InstanceDocument:
    """Canonical document for a PPI and parallel plan."""
    atoms: set[str] = {lit.atom for lit in ppi.init | ppi.goal}
    records = []
    for action in pp.plan.actions:
        atoms |= {lit.atom for lit in action.pre | action.post}
        records.append(
            ActionRecord(
                id=action.id,
                pre=format_literals(action.pre),
                post=format_literals(action.post),
                duration=action.duration,
            )
        )
    return InstanceDocument(
        format_version=FORMAT_VERSION,
        atoms=sorted(atoms),
        actions=records,
        init=format_literals(ppi.init),
        goal=format_literals(ppi.goal),
        order=sorted(transitive_reduction(pp.plan.order)),
        nonconc=sorted(pp.nonconc),
        meta=dict(meta or {}),
    )


def _literals(values: list[str], where: str, atoms: set[str]) -> frozenset[Literal]:
    try:
        lits = frozenset(Literal.parse(v) for v in values)
    except (ValueError, ValidationError) as e:
        raise SemanticError(f"Bad literal in {where}: {e}", element=where) from e
    for lit in sorted(lits):
        if lit.atom not in atoms:
            raise SemanticError(f"Undeclared atom {lit.atom!r} in {where}", element=lit.atom)
    return lits


def from_document(doc: InstanceDocument) -> tuple[Ppi, ParallelPlan]:
    """
    Build the in-memory PPI and parallel plan, closing the order.

    Raises:
        SemanticError: On undeclared atoms, duplicate or unknown ids,
            inconsistent literal sets or a cyclic order.
    """
    if doc.format_version != FORMAT_VERSION:
        raise SemanticError(
            f"Unsupported format version {doc.format_version}", element="format_version"
        )
    atoms = set(doc.atoms)
    actions: dict[str, Action] = {}
    for record in doc.actions:
        if record.id in actions:
            raise SemanticError(f"Duplicate action id {record.id!r}", element=record.id)
        try:
            actions[record.id] = Action(
                id=record.id,
                pre=_literals(record.pre, f"{record.id}.pre", atoms),
                post=_literals(record.post, f"{record.id}.post", atoms),
                duration=record.duration,
            )
        except ValidationError as e:
            raise SemanticError(f"Invalid action {record.id!r}: {e}", element=record.id) from e

    try:
        ppi = Ppi(init=_literals(doc.init, "init", atoms), goal=_literals(doc.goal, "goal", atoms))
    except ValidationError as e:
        raise SemanticError(f"Inconsistent init or goal: {e}", element="init/goal") from e

    for field, pairs in (("order", doc.order), ("nonconc", doc.nonconc)):
        for a, b in pairs:
            for x in (a, b):
                if x not in actions:
                    raise SemanticError(f"Unknown action {x!r} in {field}", element=x)
            if a == b:
                raise SemanticError(f"Reflexive pair in {field}", element=f"{a},{b}")

    try:
        order = transitive_closure(doc.order)
    except CyclicOrder as e:
        cycle = " -> ".join(a for a, _ in e.cycle or [])
        raise SemanticError(f"Order contains a cycle: {cycle}", element=cycle) from e

    plan = PartialOrderPlan(actions=tuple(actions.values()), order=order)
    return ppi, ParallelPlan(plan=plan, nonconc=frozenset(doc.nonconc))


# =============================================================================
# TEXT AND FILES
# =============================================================================

def parse_document(text: str) -> InstanceDocument:
    """
    Parse JSON text into a document.

    Raises:
        ParseError: On malformed JSON (with its line) or a schema mismatch (with the field).
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON: {e.msg}", field="document", line=e.lineno) from e
    try:
        return InstanceDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "document"
        raise ParseError(f"Invalid document: {first['msg']}", field=field) from e


def dumps(ppi: Ppi, pp: ParallelPlan, meta: Optional[dict[str, Any]] = None) -> str:
    """Canonical JSON text."""
    doc = to_document(ppi, pp, meta)
    return json.dumps(doc.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> tuple[Ppi, ParallelPlan]:
    return from_document(parse_document(text))


def read_text(path: PathLike) -> str:
    """
    Read a file, or standard input for "-".

    Raises:
        ParseError: If the bytes are not UTF-8.
        OSError: If the file cannot be read.
    """
    try:
        if str(path) == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"Not UTF-8 text: {e.reason}", field=str(path)) from e


def write_text(text: str, path: Optional[PathLike]) -> None:
    """Write a file, or standard output for None or "-"."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def load_with_meta(path: PathLike) -> tuple[Ppi, ParallelPlan, dict[str, Any]]:
    """Load a document file ("-" for standard input) along with its meta block."""
    doc = parse_document(read_text(path))
    ppi, pp = from_document(doc)
    logger.debug(f"Loaded {path}: {len(pp.plan.actions)} actions")
    return ppi, pp, doc.meta


def load(path: PathLike) -> tuple[Ppi, ParallelPlan]:
    """
    Load a document file; "-" reads standard input.

    Raises:
        ParseError: If the text is not a well-formed document.
        SemanticError: If the document is inconsistent.
    """
    ppi, pp, _ = load_with_meta(path)
    return ppi, pp


def save(
    instance: tuple[Ppi, ParallelPlan],
    path: Optional[PathLike] = None,
    meta: Optional[dict[str, Any]] = None,
) -> None:
    """Write the canonical document; None or "-" writes standard output."""
    ppi, pp = instance
    write_text(dumps(ppi, pp, meta), path)


def dumps_execution(execution: Execution) -> str:
    """Execution as canonical JSON: {"makespan": ..., "release": {...}}."""
    return json.dumps(execution.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def loads_execution(text: str, plan: PartialOrderPlan) -> Execution:
    """
    Parse an execution document and recompute its makespan against plan.

    Ids missing from the document are left for check_execution to report.

    Raises:
        ParseError: If the text is not a release-time map over plan's ids.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON: {e.msg}", field="execution", line=e.lineno) from e
    release = raw.get("release") if isinstance(raw, dict) else None
    if not isinstance(release, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in release.values()
    ):
        raise ParseError("Execution must map action ids to integer release times", field="release")
    unknown = sorted(set(release) - set(plan.by_id))
    if unknown:
        raise ParseError(f"Unknown action {unknown[0]!r} in execution", field="release")
    makespan = max(
        (release[a.id] + a.duration for a in plan.actions if a.id in release), default=0
    )
    try:
        return Execution(release=dict(sorted(release.items())), makespan=max(makespan, 0))
    except ValidationError as e:
        raise ParseError(f"Invalid execution: {e.errors()[0]['msg']}", field="release") from e


# =============================================================================
# RENDERING
# =============================================================================

def render_schedule(pp: ParallelPlan, execution: Execution, max_width: int = DEFAULT_CHART_WIDTH) -> str:
    """
    Fixed-width text Gantt chart of an execution.

    One header line with a time ruler, one row per action sorted by
    (release, id) with "#" for each column it runs in ("|" marks a
    zero-duration action), and a "makespan=N" footer. Charts longer
    than max_width columns are scaled so one column covers several time
    units; the footer then reads "makespan=N scale=S".

    Raises:
        InvalidExecution: If execution is not an execution of pp.
        ValueError: If max_width is not positive.
    """
    if max_width < 1:
        raise ValueError("max_width must be positive")
    outcome = check_execution(pp, execution)
    if isinstance(outcome, ExecutionViolation):
        raise InvalidExecution(violation=str(outcome))
    makespan = outcome

    scale = max(1, -(-makespan // max_width))
    columns = -(-makespan // scale)
    width = max((len(a) for a in pp.plan.ids), default=0)
    ruler = "".join(str(c % 10) for c in range(columns))
    lines = [f"{'':<{width}} |{ruler}|"]
    rows = sorted(pp.plan.actions, key=lambda a: (execution.release[a.id], a.id))
    for action in rows:
        start = execution.release[action.id]
        cells = ["."] * columns
        for c in range(start // scale, -(-(start + action.duration) // scale)):
            cells[c] = "#"
        if action.duration == 0 and start < makespan:
            cells[start // scale] = "|"
        lines.append(f"{action.id:<{width}} |{''.join(cells)}|")
    lines.append(f"makespan={makespan}" + (f" scale={scale}" if scale > 1 else ""))
    return "\n".join(lines) + "\n"
