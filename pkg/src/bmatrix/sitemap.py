"""Standalone SVG scatter of neuron positions coloured by activation level."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .core import ProximityModel
from .errors import DomainError, ValidationError
from .sites import ActiveSiteMap

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

WIDTH, HEIGHT, MARGIN, LEGEND_W = 480, 480, 30, 150
RADIUS = 6.0
RING = 3.0


def color_for(memory: int) -> str:
    return PALETTE[memory % len(PALETTE)]


def _scale(positions):
    xs, ys = positions[:, 0], positions[:, 1]
    span = max(xs.max() - xs.min(), ys.max() - ys.min()) or 1.0
    inner = min(WIDTH, HEIGHT) - 2 * MARGIN

    def to_px(x, y):
        px = MARGIN + (x - xs.min()) / span * inner
        py = HEIGHT - MARGIN - (y - ys.min()) / span * inner
        return px, py

    return to_px


def render_site_map(prox: ProximityModel, site_map: ActiveSiteMap) -> str:
    """Return the SVG document as a string.

    Neurons that are sites for several memories get one concentric ring per
    memory, outermost ring for the lowest memory index.
    """
    if prox.dim != 2:
        raise DomainError("site maps need a 2-D layout; 3-D positions cannot be projected")
    if site_map.m == 0 or not any(e.sites for e in site_map):
        raise ValidationError("site map has no active sites")
    for e in site_map:
        for s in e.sites:
            if not 0 <= s < prox.n:
                raise ValidationError(f"site {s} outside the {prox.n}-neuron layout")

    owners: dict[int, list[int]] = {}
    for mi, e in enumerate(site_map):
        for s in e.sites:
            owners.setdefault(s, []).append(mi)

    to_px = _scale(prox.positions)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH + LEGEND_W}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH + LEGEND_W} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH + LEGEND_W}" height="{HEIGHT}" fill="white"/>',
    ]
    for j, (x, y) in enumerate(prox.positions):
        px, py = to_px(x, y)
        mems = owners.get(j, [])
        if not mems:
            out.append(
                f'<circle class="neuron" data-index="{j}" cx="{px:.2f}" cy="{py:.2f}" '
                f'r="{RADIUS:.2f}" fill="none" stroke="#999999"/>'
            )
            continue
        k = len(mems)
        for depth, mi in enumerate(mems):
            r = RADIUS + (k - 1 - depth) * RING
            out.append(
                f'<circle class="site" data-index="{j}" data-memory="{mi}" '
                f'data-level="{site_map[mi].level}" cx="{px:.2f}" cy="{py:.2f}" '
                f'r="{r:.2f}" fill="{color_for(mi)}" stroke="black" stroke-width="0.5"/>'
            )
    lx = WIDTH + 10
    out.append(f'<text x="{lx}" y="{MARGIN}" font-family="sans-serif" font-size="12">level (memory)</text>')
    for mi, e in enumerate(site_map):
        y = MARGIN + 18 * (mi + 1)
        out.append(f'<rect x="{lx}" y="{y - 9}" width="10" height="10" fill="{color_for(mi)}"/>')
        label = escape(f"{e.level} (memory {mi})")
        out.append(f'<text x="{lx + 16}" y="{y}" font-family="sans-serif" font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
