"""
plan-order - Core Module

Deordering, reordering and parallel scheduling of partial-order plans.

This package provides:
    - Models: frozen pydantic types for literals, actions, orders and plans
    - Semantics: validity by sorting enumeration and by the MTC
    - Deordering: MLD, PRF and the least-constraint predicates
    - Oracles: exact exponential solvers for the NP-hard ordering problems
    - Reference: the VPC and KK algorithms
    - Generators: certified instances, including the toy-car plan
    - Documents: JSON instance documents and text Gantt charts

Example:
    >>> from src import gen_toy_car, prf, dppl
    >>> inst = gen_toy_car()
    >>> dppl(prf(inst.pplan)).makespan
    25
"""

from src.deorder import is_deordering, is_minimal_deordering, is_reordering, mld, removable_pairs
from src.documents import dumps, load, loads, render_schedule, save
from src.exceptions import (
    BudgetExceeded,
    CyclicOrder,
    InvalidInput,
    NotDefinite,
    ParseError,
    PlanOrderError,
    SemanticError,
)
from src.generators import (
    gen_3sat,
    gen_coloring,
    gen_gap,
    gen_kk_failure,
    gen_min_cover,
    gen_toy_car,
    gen_vpc_failure,
)
from src.models import (
    Action,
    Execution,
    Literal,
    OrderRelation,
    ParallelPlan,
    PartialOrderPlan,
    Ppi,
    SelfContainedPlan,
)
from src.oracles import mmcd_exact, mmcr_exact, mmpd_exact, mmpr_bounded, mmpr_exact, ppl_exact
from src.order import lexicographic_sort, topological_sorts, transitive_closure, transitive_reduction
from src.parallel import check_execution, dppl, execution_to_definite_order, is_definite, prf
from src.reference import kk, vpc
from src.semantics import is_valid, make_self_contained, mtc_valid, po_valid_bruteforce

__version__ = "1.0.0"

__all__ = [
    # Models
    "Action",
    "Execution",
    "Literal",
    "OrderRelation",
    "ParallelPlan",
    "PartialOrderPlan",
    "Ppi",
    "SelfContainedPlan",
    # Orders and validity
    "transitive_closure",
    "transitive_reduction",
    "topological_sorts",
    "lexicographic_sort",
    "is_valid",
    "mtc_valid",
    "po_valid_bruteforce",
    "make_self_contained",
    # Deordering and parallel plans
    "mld",
    "removable_pairs",
    "is_deordering",
    "is_reordering",
    "is_minimal_deordering",
    "prf",
    "dppl",
    "is_definite",
    "check_execution",
    "execution_to_definite_order",
    # Oracles
    "mmcd_exact",
    "mmcr_exact",
    "ppl_exact",
    "mmpd_exact",
    "mmpr_bounded",
    "mmpr_exact",
    # Reference algorithms
    "vpc",
    "kk",
    # Generators
    "gen_min_cover",
    "gen_coloring",
    "gen_3sat",
    "gen_gap",
    "gen_toy_car",
    "gen_vpc_failure",
    "gen_kk_failure",
    # Documents
    "load",
    "loads",
    "save",
    "dumps",
    "render_schedule",
    # Exceptions
    "PlanOrderError",
    "CyclicOrder",
    "InvalidInput",
    "NotDefinite",
    "BudgetExceeded",
    "ParseError",
    "SemanticError",
]
