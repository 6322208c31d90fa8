"""
From 3-Partition to ordered covering and back
=============================================

A 3-Partition instance becomes an ordered covering instance whose budget C
is met exactly when the numbers split into triplets of sum B.  Solving the
reduced instance and reading the assignment edges recovers the partition.
"""

from ocp import (
    ThreePartitionInstance,
    extract_partition,
    lemma_violations,
    reduce_3p_to_ocp,
    solve_3p_bruteforce,
    solve_exact_dp,
)

tp = ThreePartitionInstance(m=2, B=15, a=(4, 5, 6, 5, 5, 5))
print("instance:", tp)

inst, rmap = reduce_3p_to_ocp(tp)
print(f"valid triplets: {rmap.triplets}")
print(f"{len(inst.universe)} elements, {len(inst.edges)} edges, w = {rmap.w}, budget C = {inst.budget}")

# the optimum of the reduced instance sits exactly at the budget
opt = solve_exact_dp(inst, max_universe=len(inst.universe))
print("optimal covering:", " ".join(opt.covering.sequence))
print(f"optimal cost {opt.cost}  (<= C: {opt.cost <= inst.budget})")

# openings come first, then m assignments; no structural violations
print("lemma violations:", lemma_violations(rmap, inst, opt.covering))
print("extracted partition:", extract_partition(rmap, inst, opt.covering).triplets)
print("brute force agrees:", solve_3p_bruteforce(tp).triplets)

# A NO instance: no triple sums to 13, so there is nothing to reduce to.
no = ThreePartitionInstance(m=2, B=13, a=(6, 4, 4, 4, 4, 4))
inst, rmap = reduce_3p_to_ocp(no)
print("\nNO instance: triplets", rmap.triplets, "infeasible", rmap.infeasible,
      "uncoverable labels", inst.uncoverable_labels())
print("brute force:", solve_3p_bruteforce(no))
