"""
Unit tests for the VPC and KK reference algorithms.
"""

import pytest

pytestmark = pytest.mark.unit


def _inner_order(sc):
    from src.semantics import strip_self_contained

    plan, _ = strip_self_contained(sc)
    return plan.order


class TestPrimaryEffects:
    """Tests for primary effect selection."""

    def test_subgoal_chain(self, vpc_failure):
        """Verify goal atoms and the preconditions of their producers are primary."""
        from src.models import Literal
        from src.reference import primary_effects
        from src.semantics import make_self_contained

        sc = make_self_contained(vpc_failure.pplan.plan, vpc_failure.ppi)
        primaries = primary_effects(sc)

        assert primaries.of("a") == frozenset({Literal(atom="p"), Literal(atom="q")})
        assert primaries.of("c") == frozenset({Literal(atom="s")})

    def test_side_effects_not_primary(self, toy_car):
        """Verify deletions and unused atoms are not primary."""
        from src.models import Literal
        from src.reference import primary_effects
        from src.semantics import make_self_contained

        primaries = primary_effects(make_self_contained(toy_car.pplan.plan, toy_car.ppi))

        assert primaries.of("MtT") == frozenset({Literal(atom="top")})
        assert primaries.of("MvS") == frozenset()


class TestVpc:
    """Tests for the VPC algorithm."""

    def test_minimal_from_acb(self):
        """Verify VPC finds the minimum deordering from a, c, b."""
        from src.generators import gen_vpc_failure
        from src.reference import vpc
        from src.semantics import make_self_contained

        inst = gen_vpc_failure("acb")
        out = vpc(make_self_contained(inst.pplan.plan, inst.ppi))

        assert _inner_order(out).pairs == frozenset({("a", "b"), ("a", "c")})
        assert inst.certificate["vpc"] == 2

    def test_extra_pair_from_abc(self, vpc_failure):
        """Verify VPC keeps b < c from a, b, c, which mld then removes."""
        from src.deorder import is_minimal_deordering, mld
        from src.reference import vpc
        from src.semantics import make_self_contained, strip_self_contained

        out = vpc(make_self_contained(vpc_failure.pplan.plan, vpc_failure.ppi))
        plan, _ = strip_self_contained(out)

        assert len(plan.order) == vpc_failure.certificate["vpc"] == 3
        assert not is_minimal_deordering(plan, vpc_failure.ppi)
        assert mld(plan, vpc_failure.ppi).order.pairs == frozenset({("a", "b"), ("a", "c")})

    def test_output_is_valid(self, toy_car):
        """Verify VPC's output is a valid plan."""
        from src.reference import vpc
        from src.semantics import make_self_contained, mtc_valid

        out = vpc(make_self_contained(toy_car.pplan.plan, toy_car.ppi))

        assert mtc_valid(out)

    def test_requires_total_order(self, two_producer_plan):
        """Verify partial input is refused."""
        from src.deorder import mld
        from src.exceptions import NotTotalOrder
        from src.reference import vpc
        from src.semantics import make_self_contained

        plan, ppi = two_producer_plan

        with pytest.raises(NotTotalOrder):
            vpc(make_self_contained(mld(plan, ppi), ppi))

    def test_requires_positive_preconditions(self):
        """Verify negative preconditions are refused."""
        from src.exceptions import NegativePrecondition
        from src.models import Action, Ppi
        from src.order import total_order_plan
        from src.reference import vpc
        from src.semantics import make_self_contained

        plan = total_order_plan([Action(id="a", pre={"!p"}, post={"g"})])

        with pytest.raises(NegativePrecondition) as exc_info:
            vpc(make_self_contained(plan, Ppi(goal={"g"})))

        assert exc_info.value.details["action_id"] == "a"


class TestKk:
    """Tests for the KK algorithm."""

    def test_causal_structure_takes_earliest_producer(self, kk_failure):
        """Verify D's p is linked to A, the earliest producer."""
        from src.models import CausalLink, Literal
        from src.reference import causal_structure
        from src.semantics import make_self_contained

        links = causal_structure(make_self_contained(kk_failure.pplan.plan, kk_failure.ppi))

        assert CausalLink(producer="A", condition=Literal(atom="p"), consumer="D") in links
        assert CausalLink(producer="B", condition=Literal(atom="q"), consumer="D") in links

    def test_keeps_redundant_pair(self, kk_failure):
        """Verify KK keeps A < D and B < D, one more than needed."""
        from src.deorder import mld
        from src.oracles import mmcd_exact
        from src.reference import kk
        from src.semantics import make_self_contained

        out = kk(make_self_contained(kk_failure.pplan.plan, kk_failure.ppi))
        order = _inner_order(out)
        plan = kk_failure.pplan.plan.with_order(order)

        assert order.pairs == frozenset({("A", "D"), ("B", "D")})
        assert len(order) == kk_failure.certificate["kk"]
        assert len(mld(plan, kk_failure.ppi).order) == kk_failure.certificate["mld_after_kk"]
        assert mmcd_exact(kk_failure.pplan.plan, kk_failure.ppi).optimum == kk_failure.certificate["mmcd"]

    def test_output_is_valid_deordering(self, toy_car):
        """Verify KK returns a valid sub-order of its input."""
        from src.deorder import is_deordering
        from src.reference import kk
        from src.semantics import make_self_contained, strip_self_contained

        plan, ppi = toy_car.pplan.plan, toy_car.ppi
        out, _ = strip_self_contained(kk(make_self_contained(plan, ppi)))

        assert is_deordering(plan, out, ppi)

    def test_threat_ordering_kept(self, clobber_plan):
        """Verify the clobberer stays before the producer it threatens."""
        from src.reference import kk
        from src.semantics import make_self_contained

        plan, ppi = clobber_plan
        out = kk(make_self_contained(plan, ppi))

        assert _inner_order(out) == plan.order

    def test_partial_input(self, two_producer_plan):
        """Verify KK accepts a partial order and keeps it valid."""
        from src.deorder import mld
        from src.reference import kk
        from src.semantics import make_self_contained, mtc_valid

        plan, ppi = two_producer_plan
        out = kk(make_self_contained(mld(plan, ppi), ppi))

        assert mtc_valid(out)
        assert _inner_order(out).pairs == frozenset({("a", "c"), ("b", "c")})
