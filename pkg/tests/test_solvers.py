import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ocp.core import Edge, Element, OcpInstance, covers, residual_trace, total_cost
from ocp.cost import BigCost
from ocp.errors import PreconditionError, SolverCapacityError
from ocp.generators import GenParams, gen_random_ocp
from ocp.solvers import (
    _BitView,
    _FutureBound,
    lower_bound,
    solve_bnb,
    solve_exact_dp,
    solve_exact_perm,
    solve_greedy,
)

from strategies import instances

ALL = [solve_greedy, solve_exact_dp, solve_exact_perm, solve_bnb]
EXACT = [solve_exact_dp, solve_exact_perm, solve_bnb]


def remaining_optimum(instance, covered: set) -> int:
    """Cheapest cost to finish from ``covered``, by brute force over edge orders."""
    best = None
    ids = instance.edge_ids
    for k in range(len(ids) + 1):
        for seq in itertools.permutations(ids, k):
            seen = set(covered)
            cost = 0
            for eid in seq:
                res = [x for x in instance.edge(eid).elements if x not in seen]
                seen.update(res)
                u = sum(instance.weight(x) for x in res)
                cost += 2**u if u else 0
            if all(r in seen for r in instance.required) and (best is None or cost < best):
                best = cost
    return best


def test_greedy_testA(testA):
    r = solve_greedy(testA)
    assert r.covering.sequence == ("E4", "E3", "E2", "E1")
    assert r.cost == 592
    assert r.optimal is False


def test_greedy_testB(testB):
    r = solve_greedy(testB)
    assert r.covering.sequence == ("E4", "E1", "E2")
    assert r.cost == 336


def test_greedy_single_edge():
    inst = OcpInstance(("s1",), (Element("s1", 1),), (Edge("E1", ("s1",)),))
    r = solve_greedy(inst)
    assert r.covering.sequence == ("E1",)
    assert r.cost == 2


@pytest.mark.parametrize("solver", EXACT)
def test_exact_testA(solver, testA):
    r = solver(testA)
    assert r.cost == 592
    assert r.optimal


@pytest.mark.parametrize("solver", EXACT)
def test_exact_testB(solver, testB):
    r = solver(testB)
    assert r.cost == 292
    assert r.optimal


def test_dp_testB_sequence(testB):
    assert solve_exact_dp(testB).covering.sequence == ("E4", "E3", "E2", "E1")


def test_bnb_greedy_already_optimal(testA):
    r = solve_bnb(testA)
    assert r.stats["improvements"] == 0


def test_bnb_improves_on_testB(testB):
    assert solve_bnb(testB).stats["improvements"] >= 1


@pytest.mark.parametrize("solver", ALL)
def test_result_reevaluates(solver, testA, testB):
    for inst in (testA, testB):
        r = solver(inst)
        assert covers(inst, r.covering)
        assert total_cost(residual_trace(inst, r.covering)) == r.cost


def test_dp_universe_guard():
    labels = [Element(f"s{i}", 1) for i in range(65)]
    inst = OcpInstance(tuple(e.id for e in labels), tuple(labels), (Edge("E1", tuple(e.id for e in labels)),))
    with pytest.raises(SolverCapacityError):
        solve_exact_dp(inst)
    assert solve_exact_dp(inst, max_universe=65).cost == BigCost.pow2(65)


def test_dp_guard_env_override(monkeypatch, testA):
    monkeypatch.setenv("OCP_MAX_UNIVERSE", "3")
    with pytest.raises(SolverCapacityError):
        solve_exact_dp(testA)


def test_dp_state_cap(testA):
    with pytest.raises(SolverCapacityError):
        solve_exact_dp(testA, max_states=1)


def test_perm_guard():
    inst = gen_random_ocp(GenParams(seed=3, n_labels=4, n_edges=10))
    with pytest.raises(SolverCapacityError):
        solve_exact_perm(inst)


def test_uncoverable_instance_rejected():
    inst = OcpInstance(("s1",), (Element("s1", 1),), (), allow_uncoverable=True)
    for solver in ALL:
        with pytest.raises(PreconditionError):
            solver(inst)


def test_dp_with_huge_weights_uses_bigcost():
    inst = OcpInstance(
        ("s1", "s2"),
        (Element("s1", 100_000), Element("s2", 100_000)),
        (Edge("E1", ("s1",)), Edge("E2", ("s2",)), Edge("E3", ("s1", "s2"))),
    )
    r = solve_exact_dp(inst)
    assert r.cost == BigCost([100_001])


@settings(max_examples=150, deadline=None)
@given(instances(max_labels=6, max_extra=3, max_edges=5))
def test_exact_solvers_agree(inst):
    dp = solve_exact_dp(inst)
    assert solve_exact_perm(inst).cost == dp.cost
    assert solve_bnb(inst).cost == dp.cost
    assert solve_greedy(inst).cost >= dp.cost


@settings(max_examples=60, deadline=None)
@given(instances(max_labels=5, max_extra=2, max_edges=4), st.data())
def test_lower_bounds_admissible(inst, data):
    subset = data.draw(st.lists(st.sampled_from(inst.edge_ids), unique=True))
    covered = set()
    for eid in subset:
        covered |= set(inst.edge(eid).elements)
    truth = remaining_optimum(inst, covered)
    assert lower_bound(inst, covered) <= truth
    view = _BitView(inst)
    index = {el.id: k for k, el in enumerate(inst.universe)}
    mask = sum(1 << index[x] for x in covered)
    assert _FutureBound(view)(mask) <= truth


@settings(max_examples=60, deadline=None)
@given(instances(max_labels=5, max_extra=2, max_edges=4), st.data())
def test_remaining_cost_depends_only_on_union(inst, data):
    a = data.draw(st.lists(st.sampled_from(inst.edge_ids), unique=True))
    b = data.draw(st.permutations(a))
    extra = [e for e in inst.edge_ids if set(inst.edge(e).elements) <= {x for y in a for x in inst.edge(y).elements}]
    union = lambda seq: {x for e in seq for x in inst.edge(e).elements}  # noqa: E731
    b = list(b) + extra
    assert union(a) == union(b)
    assert remaining_optimum(inst, union(a)) == remaining_optimum(inst, union(b))
