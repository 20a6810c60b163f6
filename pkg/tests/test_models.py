"""
Unit tests for Pydantic models.
"""

import pytest

pytestmark = pytest.mark.unit


class TestLiteralModel:
    """Tests for the Literal model."""

    def test_parse_positive(self):
        """Verify a bare atom parses as a positive literal."""
        from src.models import Literal

        lit = Literal.parse("p")

        assert lit.atom == "p"
        assert lit.negated is False
        assert str(lit) == "p"

    def test_parse_negative(self):
        """Verify a leading bang negates."""
        from src.models import Literal

        lit = Literal.parse("!p")

        assert lit.negated is True
        assert str(lit) == "!p"

    def test_double_negation_collapses(self):
        """Verify "!!p" parses to p."""
        from src.models import Literal

        assert Literal.parse("!!p") == Literal(atom="p")

    def test_negate_is_involution(self):
        """Verify negating twice gives the same literal."""
        from src.models import Literal

        lit = Literal.parse("!q")

        assert lit.negate().negate() == lit
        assert lit.negate() == Literal(atom="q")

    def test_invalid_atom_rejected(self):
        """Verify atoms must be identifiers."""
        from src.models import Literal
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            Literal(atom="has space")

    def test_literal_is_immutable(self):
        """Verify Literal is frozen."""
        from src.models import Literal
        from pydantic import ValidationError

        lit = Literal(atom="p")

        with pytest.raises(ValidationError):
            lit.atom = "q"

    def test_sorting_puts_atom_first(self):
        """Verify literals sort by atom, positive before negative."""
        from src.models import Literal

        lits = [Literal.parse(x) for x in ["!b", "a", "b", "!a"]]

        assert [str(x) for x in sorted(lits)] == ["a", "!a", "b", "!b"]


class TestActionModel:
    """Tests for the Action model."""

    def test_action_creation(self):
        """Verify an action coerces literal strings."""
        from src.models import Action, Literal

        action = Action(id="move", pre={"at"}, post={"!at", "there"}, duration=3)

        assert Literal(atom="at") in action.pre
        assert Literal(atom="at", negated=True) in action.post
        assert action.duration == 3

    def test_default_duration_is_one(self):
        """Verify the default duration."""
        from src.models import Action

        assert Action(id="a").duration == 1

    def test_inconsistent_post_rejected(self):
        """Verify p and !p cannot both be posted."""
        from src.models import Action
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            Action(id="bad", post={"p", "!p"})

    def test_negative_duration_rejected(self):
        """Verify durations are non-negative."""
        from src.models import Action
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            Action(id="a", duration=-1)

    def test_with_duration(self):
        """Verify with_duration returns an updated copy."""
        from src.models import Action

        action = Action(id="a", post={"p"})
        longer = action.with_duration(4)

        assert longer.duration == 4
        assert action.duration == 1
        assert longer.post == action.post


class TestOrderRelationModel:
    """Tests for the OrderRelation model."""

    def test_closed_order_accepted(self):
        """Verify a closed order validates."""
        from src.models import OrderRelation

        order = OrderRelation(pairs={("a", "b"), ("b", "c"), ("a", "c")})

        assert order.precedes("a", "c")
        assert order.comparable("c", "a")
        assert len(order) == 3

    def test_unclosed_order_rejected(self):
        """Verify orders must be transitively closed."""
        from src.models import OrderRelation
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            OrderRelation(pairs={("a", "b"), ("b", "c")})

    def test_reflexive_pair_rejected(self):
        """Verify irreflexivity."""
        from src.models import OrderRelation
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            OrderRelation(pairs={("a", "a")})


class TestPlanModels:
    """Tests for plans and instances."""

    def test_actions_sorted_by_id(self):
        """Verify plans keep their actions sorted."""
        from src.models import Action, PartialOrderPlan

        plan = PartialOrderPlan(actions=[Action(id="b"), Action(id="a")])

        assert plan.ids == ["a", "b"]

    def test_duplicate_ids_rejected(self):
        """Verify action ids must be unique."""
        from src.models import Action, PartialOrderPlan
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            PartialOrderPlan(actions=[Action(id="a"), Action(id="a", post={"p"})])

    def test_unknown_order_reference_rejected(self):
        """Verify order pairs must name plan actions."""
        from src.models import Action, OrderRelation, PartialOrderPlan
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            PartialOrderPlan(actions=[Action(id="a")], order=OrderRelation(pairs={("a", "z")}))

    def test_is_total(self, two_producer_plan):
        """Verify a chain over every action is total."""
        plan, _ = two_producer_plan

        assert plan.is_total()

    def test_inconsistent_goal_rejected(self):
        """Verify PPI literal sets are consistent."""
        from src.models import Ppi
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            Ppi(goal={"g", "!g"})

    def test_nonconc_is_normalised(self):
        """Verify # pairs are stored with the smaller id first."""
        from src.models import Action, ParallelPlan, PartialOrderPlan

        plan = PartialOrderPlan(actions=[Action(id="a"), Action(id="b")])
        pp = ParallelPlan(plan=plan, nonconc={("b", "a")})

        assert pp.nonconc == frozenset({("a", "b")})
        assert pp.excludes("b", "a")

    def test_reflexive_nonconc_rejected(self):
        """Verify # is irreflexive."""
        from src.models import Action, ParallelPlan, PartialOrderPlan
        from pydantic import ValidationError

        plan = PartialOrderPlan(actions=[Action(id="a")])

        with pytest.raises(ValidationError):
            ParallelPlan(plan=plan, nonconc={("a", "a")})


class TestExecutionModel:
    """Tests for the Execution model."""

    def test_of_derives_makespan(self):
        """Verify Execution.of computes the latest finish."""
        from src.models import Action, Execution, PartialOrderPlan

        plan = PartialOrderPlan(actions=[Action(id="a", duration=2), Action(id="b", duration=5)])
        execution = Execution.of(plan, {"a": 4, "b": 0})

        assert execution.makespan == 6

    def test_negative_release_rejected(self):
        """Verify release times are non-negative."""
        from src.models import Execution
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            Execution(release={"a": -1}, makespan=0)

    def test_violation_messages(self):
        """Verify violations render readably."""
        from src.models import ExecutionViolation

        assert str(ExecutionViolation(pair=("a", "b"), condition="order")) == "a must finish before b starts"
        assert str(ExecutionViolation(pair=("a", "b"), condition="nonconc")) == "a # b overlap"


class TestPrimaryEffectSet:
    """Tests for the PrimaryEffectSet model."""

    def test_negative_effect_rejected(self):
        """Verify primary effects are positive."""
        from src.models import PrimaryEffectSet
        from pydantic import ValidationError

        with pytest.raises(ValidationError):
            PrimaryEffectSet(effects={"a": ["!p"]})

    def test_of_missing_action(self):
        """Verify actions without primaries get the empty set."""
        from src.models import PrimaryEffectSet

        assert PrimaryEffectSet(effects={"a": ["p"]}).of("b") == frozenset()
