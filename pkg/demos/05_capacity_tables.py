"""
Retrieval capacity versus network size
======================================

Seeded Monte-Carlo sweep over n in {12, 16, 20, 24} with 8 memories and 4
active sites each.  Pass a trial count as the first argument (the full
tables use 250; the default here is 50 to keep the run short).
"""

import sys

import bmatrix as bm

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50
base = bm.ExperimentConfig(n=12, m=8, r=4, trials=trials, master_seed=0)
rows = bm.run_sweep(base, [12, 16, 20, 24], ["arbitrary", "averaged", "independent"])

print(f"{'strategy':<12} {'n':>3} {'mean':>6} {'sd':>6} {'any':>6}")
for s in rows:
    c = s.config
    print(f"{c.strategy.variant:<12} {c.n:>3} {s.mean_success:6.3f} {s.stddev:6.3f} {s.mean_any_match:6.3f}")

# how memory load changes things at fixed size
print("\nmemory-count sweep, n=16, independent:")
for s in bm.run_sweep(base, [16], ["independent"], m_values=[2, 3, 4, 6, 8]):
    print(f"  m={s.config.m}: {s.mean_success:.3f} of {s.config.m}")

# clamping every neuron always recovers every memory
full = bm.ExperimentConfig(n=12, m=8, r=12, trials=5, full_clamp=True)
assert bm.run_experiment(full).mean_success == 8
