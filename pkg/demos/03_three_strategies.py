"""
Arbitrary, averaged and independent recall
==========================================

Clamp every memory's active sites with its own bits and compare the three
ways of spreading activity from several sites at once.
"""

import numpy as np

import bmatrix as bm

n, m, r = 12, 4, 4
memories = bm.generate_memories(n, m, seed=21)
t = bm.train_hebbian(memories)
prox = bm.build_proximity(n, bm.GeometryKind("uniform2d", seed=5))
site_map = bm.identify_sites(memories, r)

for i, entry in enumerate(site_map):
    sites = list(entry.sites)
    clamp = memories[i][sites]
    row = []
    for variant in ("arbitrary", "averaged", "independent"):
        res = bm.retrieve(t, prox, sites, clamp, bm.Strategy(variant, seed=i), memories)
        err = bm.hamming(res.output, memories[i])
        row.append(f"{variant}: {'hit ' if res.matched == i else f'{err} off'}")
    print(f"memory {i} sites {sorted(sites)} | " + " | ".join(row))

# the averaged order lists neurons by mean distance to the clamped sites
sites = sorted(site_map[0].sites)
print("averaged order for memory 0:", bm.order_averaged(prox, sites).order)

# independent recall sums each single-site run's potentials
for s in sites:
    out, pot = bm.fragment_potentials(t, bm.single_site_order(prox, s), [memories[0][s]])
    print(f"  potentials from site {s}: {pot}")
both = bm.retrieve_independent(t, prox, sites, memories[0][sites], memories)
vote = bm.retrieve_independent(t, prox, sites, memories[0][sites], memories, combine="vote")
print("summed potentials ->", both.output, "matched", both.matched)
print("majority vote     ->", vote.output, "matched", vote.matched)
assert np.all(both.output[sites] == memories[0][sites])
