"""
Checking certificates against huge budgets
==========================================

Budgets are stored as sums of powers of two, so a budget with millions of
bits costs a few integers.  The verifier rejects any step whose exponent
exceeds floor(log2 C) before building a cost, and never expands 2**u.
"""

import time

from ocp import BigCost, Edge, Element, OcpInstance, verify_certificate

weights = {"s1": 3_000_000, "s2": 2_999_999, "s3": 5}
inst = OcpInstance(
    required=tuple(weights),
    universe=tuple(Element(k, v) for k, v in weights.items()),
    edges=(Edge("E1", ("s1",)), Edge("E2", ("s2",)), Edge("E3", ("s3",)), Edge("E12", ("s1", "s2"))),
    budget=BigCost([3_000_000, 2_999_999, 5]),
)
print(f"budget has {inst.budget.bit_length():,} bits: {inst.budget}")

for seq in (("E1", "E2", "E3"), ("E3", "E2", "E1"), ("E12", "E3"), ("E1", "E2")):
    t = time.perf_counter()
    verdict = verify_certificate(inst, seq)
    dt = (time.perf_counter() - t) * 1000
    print(f"{' '.join(seq):<10} -> {verdict.reason.value:<18} {dt:.3f} ms  {verdict.detail}")

# shrinking the budget by one bit turns the first certificate into a reject
tight = inst.with_budget(BigCost([3_000_000, 2_999_999, 4]))
print("tight budget:", verify_certificate(tight, ("E1", "E2", "E3")).reason.value)
