"""
Active sites and activation levels
==================================

Score each neuron by how many other memories disagree with it, keep the top
r per memory and tag every memory with a prime level.  Writes a site-map SVG.
"""

import sys
from pathlib import Path

import bmatrix as bm
from bmatrix.sitemap import render_site_map

memories = bm.generate_memories(16, 5, seed=3)
site_map = bm.identify_sites(memories, r=4)

for i, entry in enumerate(site_map):
    strict = ["*" if s else "" for s in entry.strict]
    labelled = [f"{j}{f}" for j, f in zip(entry.sites, strict)]
    print(f"memory {i} level {entry.level:>2}: sites {labelled} scores {entry.scores}")
print("fraction of memories with all-strict sites:", site_map.strict_rate())

# neurons shared between memories get concentric rings in the SVG
prox = bm.build_proximity(16, "grid2d")
out = Path(sys.argv[1] if len(sys.argv) > 1 else "active_sites.svg")
out.write_text(render_site_map(prox, site_map))
print("wrote", out)
