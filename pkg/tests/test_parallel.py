"""
Unit tests for parallel plans, DPPL and PRF.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.strategies import valid_total_plans

pytestmark = pytest.mark.unit


class TestNonConcurrency:
    """Tests for # relation builders."""

    def test_simple_concurrency_toy_car(self, toy_car):
        """Verify the toy car has 13 non-concurrent pairs."""
        from src.parallel import simple_concurrency

        pairs = simple_concurrency(toy_car.pplan.plan.actions)

        assert len(pairs) == 13
        assert ("MtT", "MtW") in pairs
        assert ("IT", "PAC") in pairs
        assert pairs == toy_car.pplan.nonconc

    def test_post_exclusion_toy_car(self, toy_car):
        """Verify post exclusion only relates complementary posts."""
        from src.parallel import post_exclusion

        assert post_exclusion(toy_car.pplan.plan.actions) == frozenset(
            {("MvC1", "MvW2"), ("MvC1", "MvS"), ("MvC2", "MvS"), ("MtT", "MtW")}
        )

    def test_simple_concurrency_contains_post_exclusion(self, toy_car):
        """Verify simple concurrency implies post exclusion."""
        from src.parallel import satisfies_post_exclusion

        assert satisfies_post_exclusion(toy_car.pplan)

    def test_missing_pair_reported(self, two_producer_plan):
        """Verify the first missing simple-concurrency pair is named."""
        from src.models import ParallelPlan
        from src.parallel import missing_simple_concurrency, satisfies_simple_concurrency

        plan, _ = two_producer_plan
        pp = ParallelPlan(plan=plan, nonconc={("b", "c")})

        assert missing_simple_concurrency(pp) == ("a", "c")
        assert not satisfies_simple_concurrency(pp)

    def test_definite(self, toy_car):
        """Verify total orders are definite and the empty order is not."""
        from src.models import OrderRelation
        from src.parallel import is_definite, unordered_nonconc_pairs

        assert is_definite(toy_car.pplan)
        loose = toy_car.pplan.with_order(OrderRelation())
        assert not is_definite(loose)
        assert len(unordered_nonconc_pairs(loose)) == 13


class TestExecutions:
    """Tests for execution checking and DPPL."""

    def test_sequential_execution(self, toy_car):
        """Verify back-to-back execution takes the sum of durations."""
        from src.parallel import check_execution, sequential_execution

        execution = sequential_execution(toy_car.pplan)

        assert execution.makespan == 29
        assert check_execution(toy_car.pplan, execution) == 29

    def test_order_violation(self, toy_car):
        """Verify an action starting before its predecessor finishes is caught."""
        from src.models import Execution, ExecutionViolation
        from src.parallel import check_execution, sequential_execution

        release = dict(sequential_execution(toy_car.pplan).release)
        release["PAC"] = 0
        outcome = check_execution(toy_car.pplan, Execution.of(toy_car.pplan.plan, release))

        assert isinstance(outcome, ExecutionViolation)
        assert outcome.condition == "order"

    def test_nonconc_violation(self):
        """Verify overlapping # actions are caught."""
        from src.models import Action, Execution, ParallelPlan, PartialOrderPlan
        from src.parallel import check_execution

        plan = PartialOrderPlan(actions=[Action(id="a", duration=2), Action(id="b", duration=2)])
        pp = ParallelPlan(plan=plan, nonconc={("a", "b")})
        outcome = check_execution(pp, Execution.of(plan, {"a": 0, "b": 1}))

        assert outcome.condition == "nonconc"
        assert check_execution(pp, Execution.of(plan, {"a": 0, "b": 2})) == 4

    @pytest.mark.parametrize("release, conflict", [(0, False), (1, True), (2, False)])
    def test_zero_duration_nonconc(self, release, conflict):
        """Verify an instant action conflicts only strictly inside its partner's run."""
        from src.models import Action, Execution, ExecutionViolation, ParallelPlan, PartialOrderPlan
        from src.parallel import check_execution

        plan = PartialOrderPlan(actions=[Action(id="w", duration=2), Action(id="z", duration=0)])
        pp = ParallelPlan(plan=plan, nonconc={("w", "z")})
        outcome = check_execution(pp, Execution.of(plan, {"w": 0, "z": release}))

        assert isinstance(outcome, ExecutionViolation) == conflict
        if conflict:
            assert outcome.pair == ("w", "z")
            assert outcome.condition == "nonconc"

    def test_missing_release(self, toy_car):
        """Verify a missing release time is reported."""
        from src.models import Execution
        from src.parallel import check_execution

        outcome = check_execution(toy_car.pplan, Execution(release={"MvS": 0}, makespan=3))

        assert outcome.condition == "missing"

    def test_dppl_total_order_is_sequential(self, toy_car):
        """Verify DPPL of a total order is back-to-back."""
        from src.parallel import dppl

        assert dppl(toy_car.pplan).makespan == 29

    def test_dppl_requires_definite(self, toy_car):
        """Verify DPPL refuses a plan with unordered # pairs."""
        from src.exceptions import NotDefinite
        from src.models import OrderRelation
        from src.parallel import dppl

        with pytest.raises(NotDefinite):
            dppl(toy_car.pplan.with_order(OrderRelation()))

    def test_dppl_zero_duration(self):
        """Verify zero-duration actions do not delay successors."""
        from src.models import Action, ParallelPlan, PartialOrderPlan
        from src.order import transitive_closure
        from src.parallel import dppl

        plan = PartialOrderPlan(
            actions=[Action(id="a", duration=0), Action(id="b", duration=3)],
            order=transitive_closure({("a", "b")}),
        )
        execution = dppl(ParallelPlan(plan=plan))

        assert execution.release == {"a": 0, "b": 0}
        assert execution.makespan == 3


class TestPrf:
    """Tests for the PRF deordering."""

    def test_toy_car(self, toy_car):
        """Verify PRF then DPPL takes the toy car from 29 to 25."""
        from src.parallel import dppl, prf

        deordered = prf(toy_car.pplan, strict=True, ppi=toy_car.ppi)

        assert len(deordered.plan.order.pairs) < len(toy_car.pplan.plan.order.pairs)
        assert dppl(deordered).makespan == 25

    def test_toy_car_slow_pump(self, slow_pump_car):
        """Verify the duration variant deorders to 22."""
        from src.parallel import dppl, prf

        assert dppl(prf(slow_pump_car.pplan)).makespan == 22

    @pytest.mark.parametrize(
        "sequence,expected",
        [("TOP_FIRST_ORDER", 16), ("WHEELS_FIRST_ORDER", 20), ("TOY_CAR_ORDER", 25)],
    )
    def test_toy_car_sequences(self, toy_car, sequence, expected):
        """Verify PRF of each named sequence gives its makespan."""
        import src.generators as generators
        from src.parallel import dppl, prf

        pp = generators.toy_car_sequence(toy_car, getattr(generators, sequence))

        assert dppl(prf(pp)).makespan == expected

    @pytest.mark.parametrize(
        "sequence,expected",
        [("TOP_FIRST_ORDER", 19), ("WHEELS_FIRST_ORDER", 17)],
    )
    def test_slow_pump_sequences(self, slow_pump_car, sequence, expected):
        """Verify the variant reverses which sequence is better."""
        import src.generators as generators
        from src.parallel import dppl, prf

        pp = generators.toy_car_sequence(slow_pump_car, getattr(generators, sequence))

        assert dppl(prf(pp)).makespan == expected

    def test_output_is_definite_and_valid(self, toy_car):
        """Verify PRF keeps the plan definite and valid."""
        from src.parallel import is_definite, prf
        from src.semantics import is_valid

        deordered = prf(toy_car.pplan)

        assert is_definite(deordered)
        assert is_valid(deordered.plan, toy_car.ppi)

    def test_not_definite(self, toy_car):
        """Verify PRF refuses a plan with unordered # pairs."""
        from src.exceptions import NotDefinite
        from src.models import OrderRelation
        from src.parallel import prf

        with pytest.raises(NotDefinite):
            prf(toy_car.pplan.with_order(OrderRelation()))

    def test_strict_requires_simple_concurrency(self, two_producer_plan):
        """Verify strict mode rejects a # missing required pairs."""
        from src.exceptions import SimpleConcurrencyViolated
        from src.models import ParallelPlan
        from src.parallel import prf

        plan, ppi = two_producer_plan

        with pytest.raises(SimpleConcurrencyViolated):
            prf(ParallelPlan(plan=plan), strict=True, ppi=ppi)

    def test_non_strict_may_break_validity(self, two_producer_plan):
        """Verify PRF with an empty # drops every ordering."""
        from src.models import ParallelPlan
        from src.parallel import prf
        from src.semantics import is_valid

        plan, ppi = two_producer_plan
        out = prf(ParallelPlan(plan=plan))

        assert len(out.plan.order) == 0
        assert not is_valid(out.plan, ppi)


class TestExecutionToDefiniteOrder:
    """Tests for turning executions into definite orders."""

    def test_keeps_execution(self, toy_car):
        """Verify the induced plan admits the same execution."""
        from src.parallel import check_execution, dppl, execution_to_definite_order, is_definite, prf

        pp = prf(toy_car.pplan)
        execution = dppl(pp)
        induced = execution_to_definite_order(pp, execution)

        assert is_definite(induced)
        assert pp.plan.order.pairs <= induced.plan.order.pairs
        assert check_execution(induced, execution) == 25
        assert dppl(induced).makespan == 25

    def test_invalid_execution(self, toy_car):
        """Verify a non-execution is rejected."""
        from src.exceptions import InvalidExecution
        from src.models import Execution
        from src.parallel import execution_to_definite_order

        release = {a: 0 for a in toy_car.pplan.plan.ids}

        with pytest.raises(InvalidExecution):
            execution_to_definite_order(toy_car.pplan, Execution.of(toy_car.pplan.plan, release))


@st.composite
def toy_car_durations(draw):
    """Random duration tables for the toy car."""
    from src.generators import TOY_CAR_DURATIONS

    return {name: draw(st.integers(min_value=0, max_value=9)) for name in TOY_CAR_DURATIONS}


class TestPrfProperties:
    """PRF optimality against the exact oracle."""

    @settings(max_examples=25, deadline=None)
    @given(toy_car_durations())
    def test_prf_matches_definite_mmpd(self, durations):
        """Verify PRF reaches the best definite deordering for any durations."""
        from src.generators import gen_toy_car
        from src.oracles import mmpd_exact
        from src.parallel import dppl, prf

        inst = gen_toy_car(durations)
        answer = mmpd_exact(inst.pplan, inst.ppi, definite_only=True)

        assert dppl(prf(inst.pplan)).makespan == answer.optimum

    @settings(max_examples=500, deadline=None)
    @given(valid_total_plans())
    def test_prf_matches_definite_mmpd_on_random_plans(self, instance):
        """Verify PRF is optimal among definite deorderings of random valid plans."""
        from src.oracles import mmpd_exact
        from src.parallel import dppl, prf

        pp, ppi = instance
        answer = mmpd_exact(pp, ppi, definite_only=True)

        # unrestricted mmpd may be lower: PRF's guarantee covers definite deorderings only
        assert dppl(prf(pp)).makespan == answer.optimum
        assert mmpd_exact(pp, ppi).optimum <= answer.optimum
