"""Hebbian training and neuron geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import WEIGHT_DTYPE, MemorySet, ProximityModel, UpdateOrder, WeightMatrix
from .errors import DomainError, SiteIndexError, ValidationError

GEOMETRIES = ("line", "grid2d", "uniform2d", "uniform3d")


@dataclass(frozen=True)
class GeometryKind:
    variant: str = "uniform2d"
    seed: int = 0

    def __post_init__(self):
        if self.variant not in GEOMETRIES:
            raise ValidationError(f"unknown geometry {self.variant!r}; choose from {GEOMETRIES}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("geometry seed must be a 64-bit unsigned integer")


def train_hebbian(memories: MemorySet) -> WeightMatrix:
    """Sum of outer products ``x xᵀ`` over the memories, diagonal zeroed."""
    x = memories.patterns.astype(WEIGHT_DTYPE)
    t = x.T @ x
    np.fill_diagonal(t, 0)
    return WeightMatrix(t)


def grid_shape(n: int) -> tuple[int, int]:
    """Most square ``rows x cols`` factorisation of ``n`` with ``rows <= cols``.

    Primes collapse to ``1 x n``.
    """
    rows = max(d for d in range(1, math.isqrt(n) + 1) if n % d == 0)
    return rows, n // rows


def neuron_positions(n: int, geometry: GeometryKind) -> np.ndarray:
    if n < 2:
        raise DomainError(f"need n >= 2 neurons, got {n}")
    kind = geometry.variant
    if kind == "line":
        return np.column_stack([np.arange(n, dtype=np.float64), np.zeros(n)])
    if kind == "grid2d":
        _, cols = grid_shape(n)
        idx = np.arange(n)
        return np.column_stack([idx % cols, idx // cols]).astype(np.float64)
    rng = np.random.default_rng(int(geometry.seed))
    return rng.random((n, 2 if kind == "uniform2d" else 3))


def build_proximity(n: int, geometry: GeometryKind | str = "uniform2d") -> ProximityModel:
    """Lay ``n`` neurons out per ``geometry`` and compute their distance matrix.

    ``line`` puts neuron ``i`` at ``(i, 0)``; ``grid2d`` fills a row-major unit
    lattice; the ``uniform`` variants draw seeded points in the unit square or
    cube.
    """
    if isinstance(geometry, str):
        geometry = GeometryKind(geometry)
    return ProximityModel(neuron_positions(n, geometry))


def _check_site(site, n):
    if not 0 <= site < n:
        raise SiteIndexError(f"site {site} out of range for n={n}")


def order_by_distance(prox: ProximityModel, site: int, exclude=()) -> list[int]:
    """Neurons other than ``site`` and ``exclude``, nearest first, ties to lower index."""
    skip = set(exclude) | {site}
    row = prox.sq_dist[site]
    return sorted((j for j in range(prox.n) if j not in skip), key=lambda j: (row[j], j))


def single_site_order(prox: ProximityModel, site: int) -> UpdateOrder:
    site = int(site)
    _check_site(site, prox.n)
    return UpdateOrder((site, *order_by_distance(prox, site)), 1)
