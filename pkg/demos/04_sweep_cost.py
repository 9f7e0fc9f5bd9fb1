"""
How many recalls does a full stimulation sweep cost?
====================================================

Trying every subset of up to r neurons with every bipolar fragment costs
sum_i C(n, i) 2^i recalls.  Restricting to r active sites costs 3^r - 1.
"""

import bmatrix as bm

rep = bm.cost_report(64, 4)
print(f"n=64, r=4: all neurons {rep.classical_ops:,} vs active sites {rep.active_ops:,}"
      f" ({rep.ratio:,.0f}x fewer)")

print(f"{'n':>4} {'r':>3} {'all neurons':>22} {'active sites':>14}")
for n in (16, 32, 64, 128):
    for r in (2, 4, 8):
        print(f"{n:>4} {r:>3} {bm.cost_classical(n, r):>22,} {bm.cost_active(r):>14,}")

assert all(bm.cost_active(r) == 3**r - 1 for r in range(1, 21))
