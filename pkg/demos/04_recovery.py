"""
Recovering the karate club from its groups
==========================================

Generate 1000 groups from the karate club with each model, keep the
co-memberships that beat a fixed-degree null, and compare the result with
the original ties.
"""

from bigraph import RecoveryConfig, run_recovery_experiment

rows = run_recovery_experiment(RecoveryConfig(seed=3))
print(f"{'model':<14} {'matching':>8} {'phi':>6} {'jaccard':>8} {'ties':>5}")
for r in rows:
    print(f"{r['model']:<14} {r['simple_matching']:8.3f} {r['correlation']:6.3f} "
          f"{r['jaccard']:8.3f} {r['backbone'].edge_count:5d}")
