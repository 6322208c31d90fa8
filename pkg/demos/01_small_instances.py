"""
Two small instances, greedy against exact
==========================================

Seven labels, four edges, and a cost that charges 2**u for every step that
first covers total weight u.  On ``testA`` the greedy order is optimal; on
``testB`` it is not.
"""

from ocp import load_fixture, residual_trace, solve_exact_dp, solve_greedy, total_cost

for name in ("testA", "testB"):
    inst = load_fixture(name)
    print(f"--- {name}: weights {[inst.weight(r) for r in inst.required]}")
    for e in inst.edges:
        print(f"  {e.id} = {{{', '.join(e.elements)}}}")

    # greedy picks the cheapest marginal step, ties to the lowest edge index
    g = solve_greedy(inst)
    opt = solve_exact_dp(inst)
    print(f"  greedy  {' '.join(g.covering.sequence):<14} cost {g.cost}")
    print(f"  optimum {' '.join(opt.covering.sequence):<14} cost {opt.cost}")

    # the residual trace shows where the cost comes from
    for step in residual_trace(inst, opt.covering).steps:
        print(f"    {step.edge_id}: U = {sorted(step.residual)}, u = {step.weight}, 2^u = {step.cost}")

# On testB, greedy grabs E1 early and pays for s1 and s2 together (2**6).
inst = load_fixture("testB")
print("testB greedy trace weights:", residual_trace(inst, ("E4", "E1", "E2")).weights)
print("testB greedy cost:", total_cost(residual_trace(inst, ("E4", "E1", "E2"))))
