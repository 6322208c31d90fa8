"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import time

import pytest

from ocp.core import Edge, Element, OcpInstance, Reason, verify_certificate
from ocp.cost import BigCost
from ocp.generators import GenParams, feasible_values, gen_random_3p, gen_random_ocp
from ocp.io import load_fixture, parse_instance, serialize_instance
from ocp.reduction import (
    ThreePartitionInstance,
    enumerate_valid_triplets,
    extract_partition,
    lemma_violations,
    partition_violations,
    reduce_3p_to_ocp,
    solve_3p_bruteforce,
    validate_3p,
)
from ocp.solvers import solve_bnb, solve_exact_dp, solve_exact_perm, solve_greedy

EXACT = (solve_exact_dp, solve_exact_perm, solve_bnb)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def exhaustive_3p(max_m=2, max_B=15):
    """Every valid 3-Partition multiset with m <= max_m and B <= max_B."""
    out = []
    for m in range(1, max_m + 1):
        for B in range(1, max_B + 1):
            for a in itertools.combinations_with_replacement(feasible_values(B), 3 * m):
                if sum(a) == m * B:
                    out.append(ThreePartitionInstance(m, B, a))
    return out


def planted_m3(count=50):
    return [gen_random_3p(GenParams(family="planted-3p", seed=s, m=3, B_min=40, B_max=120)) for s in range(count)]


def criterion3_suite(count=200):
    suite = []
    for seed in range(count):
        p = GenParams(
            seed=seed,
            n_labels=1 + seed % 8,
            n_edges=1 + (seed // 8) % 6,
            max_weight=5,
            n_extra=seed % 2,
        )
        suite.append(gen_random_ocp(p))
    return suite


def pipeline(tp):
    """Reduce, solve exactly, and decide; returns (answer, instance, map, result)."""
    inst, rmap = reduce_3p_to_ocp(tp)
    if rmap.infeasible:
        return False, inst, rmap, None
    result = solve_exact_dp(inst, max_universe=len(inst.universe))
    return result.cost <= inst.budget, inst, rmap, result


@pytest.fixture(scope="module")
def reduction_runs():
    runs = []
    for tp in exhaustive_3p() + planted_m3():
        assert validate_3p(tp) == []
        answer, inst, rmap, result = pipeline(tp)
        runs.append((tp, answer, inst, rmap, result, solve_3p_bruteforce(tp)))
    return runs


def test_criterion_1_testA(report):
    inst = load_fixture("testA")
    t = time.perf_counter()
    costs = [s(inst).cost for s in EXACT]
    g = solve_greedy(inst)
    elapsed = time.perf_counter() - t
    ok = all(c == 592 for c in costs) and g.cost == 592 and g.covering.sequence == ("E4", "E3", "E2", "E1")
    ok = ok and elapsed < 1.0
    report(1, ok, f"testA exact costs {[str(c) for c in costs]}, greedy {g.cost} "
                  f"{' '.join(g.covering.sequence)}, {elapsed * 1000:.1f} ms")


def test_criterion_2_testB(report):
    inst = load_fixture("testB")
    costs = [s(inst).cost for s in EXACT]
    g = solve_greedy(inst)
    ok = all(c == 292 for c in costs) and g.cost == 336 and g.covering.sequence == ("E4", "E1", "E2")
    report(2, ok, f"testB exact costs {[str(c) for c in costs]}, greedy {g.cost} {' '.join(g.covering.sequence)}")


def test_criterion_3_oracle_equivalence(report):
    suite = criterion3_suite()
    t = time.perf_counter()
    disagreements = 0
    for inst in suite:
        assert len(inst.edges) <= 6 and len(inst.required) <= 8
        costs = {s(inst).cost for s in EXACT}
        disagreements += len(costs) != 1
    elapsed = time.perf_counter() - t
    ok = disagreements == 0 and elapsed < 60
    report(3, ok, f"{len(suite)} instances, {disagreements} disagreements, {elapsed:.1f} s")


def test_criterion_4_reduction_equivalence(report, reduction_runs):
    mismatches = []
    yes = no = 0
    for tp, answer, inst, rmap, result, partition in reduction_runs:
        truth = partition is not None
        yes += truth
        no += not truth
        if answer != truth:
            mismatches.append(f"{tp}: pipeline {answer}, brute force {truth}")
            continue
        if truth:
            if result.cost != inst.budget:
                mismatches.append(f"{tp}: optimum {result.cost} != C {inst.budget}")
                continue
            extracted = extract_partition(rmap, inst, result.covering)
            if partition_violations(tp, extracted):
                mismatches.append(f"{tp}: extracted partition invalid")
    exhaustive = sum(1 for r in reduction_runs if r[0].m <= 2)
    m3 = len(reduction_runs) - exhaustive
    ok = not mismatches and m3 >= 50
    report(4, ok, f"{exhaustive} exhaustive (m<=2, B<=15) + {m3} planted m=3 instances, "
                  f"{yes} YES / {no} NO, {len(mismatches)} mismatches {mismatches[:3]}")


def test_criterion_5_no_witness(report):
    tp = ThreePartitionInstance(2, 13, (6, 4, 4, 4, 4, 4))
    triplets = enumerate_valid_triplets(tp)
    answer, inst, rmap, _ = pipeline(tp)
    brute = solve_3p_bruteforce(tp)
    ok = triplets == [] and rmap.infeasible and inst.allow_uncoverable and answer is False and brute is None
    report(5, ok, f"T={triplets}, infeasible={rmap.infeasible}, pipeline {'YES' if answer else 'NO'}, "
                  f"brute force {'YES' if brute else 'NO'}")


def test_criterion_6_lemmas(report, reduction_runs):
    checked = 0
    violations = []
    for tp, answer, inst, rmap, result, _ in reduction_runs:
        if not answer:
            continue
        assert verify_certificate(inst, result.covering).accepted
        checked += 1
        violations += [f"{tp}: {v}" for v in lemma_violations(rmap, inst, result.covering)]
    ok = checked > 0 and not violations
    report(6, ok, f"{checked} budget-feasible coverings, {len(violations)} lemma violations {violations[:3]}")


def _timed_verify(inst, seq):
    t = time.perf_counter()
    v = verify_certificate(inst, seq)
    return v, time.perf_counter() - t


def test_criterion_7_verifier_scaling(report):
    base = OcpInstance(
        ("s1", "s2", "s3"),
        (Element("s1", 1200), Element("s2", 1100), Element("s3", 10**9)),
        (Edge("E1", ("s1",)), Edge("E2", ("s2",)), Edge("E12", ("s1", "s2")), Edge("E3", ("s3",)),
         Edge("E123", ("s1", "s2", "s3"))),
        allow_uncoverable=False,
    )
    doc = serialize_instance(base.with_budget(BigCost([10**9, 1200, 1100])))
    inst = parse_instance(doc)
    assert inst.budget.bit_length() >= 1000
    checks = [
        (("E1", "E2", "E3"), Reason.ACCEPTED),
        (("E3", "E2", "E1", "E12"), Reason.ACCEPTED),
        (("E12", "E3"), Reason.BUDGET_EXCEEDED),
        (("E123",), Reason.OVERSIZED_EXPONENT),
        (("E1", "E2"), Reason.NOT_A_COVERING),
    ]
    tight = parse_instance(serialize_instance(base.with_budget(BigCost([10**9, 1200, 1099]))))
    checks_tight = [(("E1", "E2", "E3"), Reason.BUDGET_EXCEEDED)]
    results = []
    for target, cases in ((inst, checks), (tight, checks_tight)):
        for seq, expected in cases:
            v, dt = _timed_verify(target, seq)
            results.append((seq, v.reason, expected, dt))
    worst = max(r[3] for r in results)
    ok = all(r[1] is r[2] for r in results) and worst < 0.1
    wrong = [f"{r[0]}: {r[1].value} (expected {r[2].value})" for r in results if r[1] is not r[2]]
    report(7, ok, f"budget of {inst.budget.bit_length()} bits, {len(results)} verdicts, "
                  f"slowest {worst * 1000:.2f} ms, wrong {wrong}")


def test_criterion_8_greedy_dominates(report):
    suite = criterion3_suite()
    below = 0
    strict = 0
    for inst in suite:
        g = solve_greedy(inst).cost
        o = solve_exact_dp(inst).cost
        below += g < o
        strict += g > o
    testB = load_fixture("testB")
    testB_strict = solve_greedy(testB).cost > solve_exact_dp(testB).cost
    ok = below == 0 and testB_strict
    report(8, ok, f"{len(suite)} instances, greedy below optimum on {below}, strictly above on {strict}, "
                  f"testB strict {testB_strict}")
