"""
Hypothesis strategies shared by the property suites.
"""

from hypothesis import strategies as st

ATOMS = ["p", "q", "r", "s"]


def _literals(atoms):
    return st.sampled_from(atoms).flatmap(lambda atom: st.sampled_from([atom, f"!{atom}"]))


def _consistent(lits):
    seen = {}
    return [x for x in lits if seen.setdefault(x.lstrip("!"), x) == x]


@st.composite
def valid_total_plans(draw, max_actions=6, max_duration=3, atoms=ATOMS):
    """
    Valid total-order plans with deletes and durations.

    Each action's preconditions are drawn from the state reached so far
    and the goal from the final state, so the sequence is valid as drawn.
    Returns (ParallelPlan under simple concurrency, Ppi).
    """
    from src.models import Action, Literal, ParallelPlan, Ppi
    from src.order import total_order_plan
    from src.parallel import simple_concurrency
    from src.semantics import progress

    init = _consistent(draw(st.lists(_literals(atoms), max_size=len(atoms))))
    state = frozenset(Literal.parse(x) for x in init)

    n = draw(st.integers(min_value=1, max_value=max_actions))
    actions = []
    for i in range(n):
        held = sorted(str(x) for x in state)
        pre = draw(st.lists(st.sampled_from(held), max_size=2, unique=True)) if held else []
        post = _consistent(draw(st.lists(_literals(atoms), min_size=1, max_size=2)))
        action = Action(
            id=f"a{i}",
            pre=pre,
            post=post,
            duration=draw(st.integers(min_value=0, max_value=max_duration)),
        )
        state = progress(state, action)
        actions.append(action)

    final = sorted(str(x) for x in state)
    goal = draw(st.lists(st.sampled_from(final), max_size=2, unique=True)) if final else []
    plan = total_order_plan(actions)
    ppi = Ppi(init=init, goal=goal)
    return ParallelPlan(plan=plan, nonconc=simple_concurrency(plan.actions)), ppi
