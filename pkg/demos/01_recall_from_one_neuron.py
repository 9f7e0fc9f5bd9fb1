"""
Growing a memory from a single clamped neuron
=============================================

Train a small network, clamp one neuron and let activity spread outward in
order of distance.
"""

import numpy as np

import bmatrix as bm

# two stored patterns over four neurons
memories = bm.MemorySet(np.array([[1, 1, -1, -1], [1, -1, 1, -1]]))
t = bm.train_hebbian(memories)
print("weights T:\n", t.t)
print("B (strict lower triangle):\n", t.b)
assert np.array_equal(t.b + t.b.T, t.t)

# neurons on a 2x2 lattice
prox = bm.build_proximity(4, "grid2d")
print("distances:\n", prox.dist.round(3))

# clamp each neuron in turn with memory 0's bit
for site in range(4):
    res = bm.retrieve_classical(t, prox, site, memories[0][site], memories)
    print(f"site {site}: order {res.order.order} -> {res.output} matched={res.matched}")

# a single stored memory comes back from any neuron, whatever the order
x = np.array([1, -1, -1, 1, 1, -1])
single = bm.MemorySet(x[None, :])
line = bm.build_proximity(6, "line")
outs = {tuple(bm.retrieve_classical(bm.train_hebbian(single), line, s, x[s]).output.tolist()) for s in range(6)}
print("single-memory recalls:", outs)
