"""
Pytest fixtures shared across all test modules.
"""

import pytest


@pytest.fixture
def toy_car():
    """Toy-car instance with the default durations."""
    from src.generators import gen_toy_car

    return gen_toy_car()


@pytest.fixture
def slow_pump_car():
    """Toy-car instance with PAC=2 and MvT1=8."""
    from src.generators import gen_toy_car

    return gen_toy_car({"PAC": 2, "MvT1": 8})


@pytest.fixture
def two_producer_plan():
    """
    Total order a < b < c where b and c both need p and q.

    a posts p, b posts q, c needs p and q and posts g. Minimum deordering
    keeps a < c and b < c.
    """
    from src.models import Action, Ppi
    from src.order import total_order_plan

    actions = [
        Action(id="a", post={"p"}),
        Action(id="b", post={"q"}),
        Action(id="c", pre={"p", "q"}, post={"g"}),
    ]
    return total_order_plan(actions), Ppi(goal={"g"})


@pytest.fixture
def greedy_trap_plan():
    """
    Total order a1 < a2 < a3 < a4 where a1 alone supports a4.

    a1 posts p and q, a2 posts p, a3 posts q, a4 needs p and q and posts
    g. Minimum deordering keeps a1 < a4; greedy removal ends at the
    minimal but larger {a2 < a4, a3 < a4}.
    """
    from src.models import Action, Ppi
    from src.order import total_order_plan

    actions = [
        Action(id="a1", post={"p", "q"}),
        Action(id="a2", post={"p"}),
        Action(id="a3", post={"q"}),
        Action(id="a4", pre={"p", "q"}, post={"g"}),
    ]
    return total_order_plan(actions), Ppi(goal={"g"})


@pytest.fixture
def clobber_plan():
    """
    Total order b < a < c where b deletes what a gives c.

    a posts p, c needs p and posts g, b posts !p and h. The goal is {g, h}.
    Every valid order keeps b outside the a..c interval.
    """
    from src.models import Action, Ppi
    from src.order import total_order_plan

    actions = [
        Action(id="b", post={"!p", "h"}),
        Action(id="a", post={"p"}),
        Action(id="c", pre={"p"}, post={"g"}),
    ]
    return total_order_plan(actions), Ppi(goal={"g", "h"})


@pytest.fixture
def vpc_failure():
    """VPC failure instance in the a, b, c sorting."""
    from src.generators import gen_vpc_failure

    return gen_vpc_failure("abc")


@pytest.fixture
def kk_failure():
    """KK failure instance."""
    from src.generators import gen_kk_failure

    return gen_kk_failure()
