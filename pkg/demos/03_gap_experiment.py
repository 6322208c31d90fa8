"""
Greedy-versus-optimal gap on random instances
=============================================

Costs are exponential in the residual weight, so a single bad greedy step
can be expensive.  This runs greedy and the exact solver over a seeded batch
and reports the ratio greedy / optimum.
"""

from ocp import GenParams, gen_random_ocp, run_gap_experiment

batch = [
    (f"seed{s}", gen_random_ocp(GenParams(seed=s, n_labels=8, n_edges=6, max_weight=8, edge_density=0.35)))
    for s in range(60)
]
report = run_gap_experiment(batch)

# only show the rows where greedy lost
worst = sorted((r for r in report.solved if r.ratio > 1), key=lambda r: r.ratio, reverse=True)
for r in worst:
    print(f"{r.instance_id:>7}: greedy {str(r.greedy_cost):>8}  optimum {str(r.optimal_cost):>8}  "
          f"ratio {float(r.ratio):.3f}")

strict = sum(1 for r in report.solved if r.ratio > 1)
print(f"\n{len(report.solved)} instances, greedy suboptimal on {strict}")
print(f"mean ratio {report.mean_ratio:.4f}, max ratio {float(report.max_ratio):.4f}, "
      f"mean log2 gap {report.mean_log2_gap:.4f}")
