"""
Custom exceptions for plan-order.

This module provides a hierarchy of domain-specific exceptions
for better error handling and debugging. Every error raised by the
library derives from PlanOrderError and carries a details dict.
"""

from __future__ import annotations

from typing import Any, Optional


class PlanOrderError(Exception):
    """
    Base exception for all plan-order errors.

    Attributes:
        message: Human-readable error message.
        details: Optional additional context for debugging.
    """

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


# =============================================================================
# ORDER & PLAN STRUCTURE
# =============================================================================

class CyclicOrder(PlanOrderError):
    """Raised when an order relation contains a cycle or a reflexive pair."""

    def __init__(
        self,
        message: str = "Order relation is not acyclic",
        cycle: Optional[list[tuple[str, str]]] = None,
    ) -> None:
        self.cycle = cycle or []
        details = {"cycle": self.cycle} if cycle else {}
        super().__init__(message, details)


class IdCollision(PlanOrderError):
    """Raised when a reserved or duplicate action id is used."""

    def __init__(
        self,
        message: str = "Action id already in use",
        action_id: Optional[str] = None,
    ) -> None:
        self.action_id = action_id
        details = {"action_id": action_id} if action_id else {}
        super().__init__(message, details)


class InvalidInput(PlanOrderError):
    """Raised when an algorithm's input fails its precondition."""

    def __init__(
        self,
        message: str = "Input plan is not valid",
        reason: Optional[str] = None,
    ) -> None:
        details = {"reason": reason} if reason else {}
        super().__init__(message, details)


class NotTotalOrder(PlanOrderError):
    """Raised when a totally ordered plan was required."""

    def __init__(
        self,
        message: str = "Plan is not totally ordered",
        pair: Optional[tuple[str, str]] = None,
    ) -> None:
        self.pair = pair
        details = {"unordered": pair} if pair else {}
        super().__init__(message, details)


class NegativePrecondition(PlanOrderError):
    """Raised when an algorithm restricted to positive preconditions meets a negative one."""

    def __init__(
        self,
        message: str = "Negative precondition not supported",
        action_id: Optional[str] = None,
        literal: Optional[str] = None,
    ) -> None:
        details = {}
        if action_id:
            details["action_id"] = action_id
        if literal:
            details["literal"] = literal
        super().__init__(message, details)


class SizeLimitExceeded(PlanOrderError):
    """Raised when an exponential check is asked to run above its size guard."""

    def __init__(
        self,
        message: str = "Plan too large for exhaustive check",
        limit: Optional[int] = None,
        size: Optional[int] = None,
    ) -> None:
        self.limit = limit
        self.size = size
        details: dict[str, Any] = {}
        if limit is not None:
            details["limit"] = limit
        if size is not None:
            details["size"] = size
        super().__init__(message, details)


# =============================================================================
# PARALLEL EXECUTION
# =============================================================================

class NotDefinite(PlanOrderError):
    """Raised when a definite parallel plan was required."""

    def __init__(
        self,
        message: str = "Parallel plan is not definite",
        pair: Optional[tuple[str, str]] = None,
    ) -> None:
        self.pair = pair
        details = {"unordered_nonconc_pair": pair} if pair else {}
        super().__init__(message, details)


class SimpleConcurrencyViolated(PlanOrderError):
    """Raised in strict mode when # lacks a pair the simple concurrency criterion requires."""

    def __init__(
        self,
        message: str = "Non-concurrency relation violates simple concurrency",
        pair: Optional[tuple[str, str]] = None,
    ) -> None:
        self.pair = pair
        details = {"missing_pair": pair} if pair else {}
        super().__init__(message, details)


class InvalidExecution(PlanOrderError):
    """Raised when a release-time map is not a parallel execution of the plan."""

    def __init__(
        self,
        message: str = "Release times do not form a parallel execution",
        violation: Optional[str] = None,
    ) -> None:
        self.violation = violation
        details = {"violation": violation} if violation else {}
        super().__init__(message, details)


# =============================================================================
# ORACLES & GENERATORS
# =============================================================================

class BudgetExceeded(PlanOrderError):
    """Raised when an exact search runs past its action guard or node cap."""

    def __init__(
        self,
        message: str = "Search budget exceeded",
        limit_name: Optional[str] = None,
        limit: Optional[int] = None,
    ) -> None:
        self.limit_name = limit_name
        self.limit = limit
        details: dict[str, Any] = {}
        if limit_name:
            details["limit_name"] = limit_name
        if limit is not None:
            details["limit"] = limit
        super().__init__(message, details)


class ElementNotInS(PlanOrderError):
    """Raised when a cover subset mentions an element outside the ground set."""

    def __init__(
        self,
        message: str = "Subset element not in ground set",
        element: Optional[str] = None,
    ) -> None:
        details = {"element": element} if element else {}
        super().__init__(message, details)


class MalformedClause(PlanOrderError):
    """Raised when a 3SAT clause is not a triple of literals over the declared atoms."""

    def __init__(
        self,
        message: str = "Malformed clause",
        index: Optional[int] = None,
    ) -> None:
        self.index = index
        details = {"clause_index": index} if index is not None else {}
        super().__init__(message, details)


class UnknownActionName(PlanOrderError):
    """Raised when a duration override names an action that does not exist."""

    def __init__(
        self,
        message: str = "Unknown action name",
        name: Optional[str] = None,
    ) -> None:
        details = {"name": name} if name else {}
        super().__init__(message, details)


# =============================================================================
# DOCUMENTS
# =============================================================================

class ParseError(PlanOrderError):
    """Raised when an instance document cannot be parsed."""

    def __init__(
        self,
        message: str = "Cannot parse instance document",
        field: Optional[str] = None,
        line: Optional[int] = None,
    ) -> None:
        self.field = field
        self.line = line
        details: dict[str, Any] = {}
        if field:
            details["field"] = field
        if line is not None:
            details["line"] = line
        super().__init__(message, details)


class SemanticError(PlanOrderError):
    """Raised when a parsed document references unknown ids or breaks an invariant."""

    def __init__(
        self,
        message: str = "Instance document is inconsistent",
        element: Optional[str] = None,
    ) -> None:
        self.element = element
        details = {"element": element} if element else {}
        super().__init__(message, details)
