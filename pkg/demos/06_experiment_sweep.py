"""Batch experiments: random instances against exact optima.

The same runs are available from the command line as ``regenplace sweep``.
"""

from regenplace.harness import ExperimentConfig, run_random_sweep

for family, algorithm, d in [("rlp-path", "grid", 3), ("rlp-path", "random-grid", 3),
                             ("rlp-ring", "setcover", 2), ("pmax-any", "pmax", 2)]:
    cfg = ExperimentConfig(mode="random-sweep", family=family, algorithm=algorithm, d=d,
                           count=50, trials=20, seed=1)
    agg = run_random_sweep(cfg).aggregate
    print(f"{family:9s} {algorithm:12s} mean {agg['mean_ratio']:.3f} max {agg['max_ratio']:.3f}",
          {k: round(v["max_ratio"], 3) for k, v in agg["by_family"].items()})
