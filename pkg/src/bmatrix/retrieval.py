"""Fragment-growing recall through the strict lower triangle of ``T``.

Neurons are visited in an update order.  The clamped prefix is fixed and
each subsequent neuron ``i`` (in permuted coordinates) takes
``sgn(sum_{j<i} B'[i, j] * f[j])`` where ``B'`` is the strict lower triangle
of the permuted weight matrix.  Four ways of stimulating the network are
provided:

``classical``
    one clamped neuron, order from its proximity row.
``arbitrary``
    several clamped neurons, remaining neurons in a seeded random order.
``averaged``
    several clamped neurons, remaining neurons by mean distance to the sites.
``independent``
    one single-site recall per clamped neuron; the pre-threshold potentials
    are summed across sites and thresholded once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SPIN_DTYPE, MemorySet, ProximityModel, UpdateOrder, WeightMatrix, as_bipolar, sgn
from .errors import ContractError, DimensionError, DomainError, SiteIndexError, ValidationError
from .training import single_site_order

STRATEGIES = ("classical", "arbitrary", "averaged", "independent")
COMBINE_MODES = ("potential", "vote")


@dataclass(frozen=True)
class Strategy:
    """Retrieval strategy.

    ``seed`` only affects ``arbitrary``.  ``combine`` only affects
    ``independent``: ``"potential"`` sums integer potentials, ``"vote"`` sums
    the per-site bipolar outputs instead.
    """

    variant: str = "independent"
    seed: int = 0
    combine: str = "potential"

    def __post_init__(self):
        if self.variant not in STRATEGIES:
            raise ValidationError(f"unknown strategy {self.variant!r}; choose from {STRATEGIES}")
        if self.combine not in COMBINE_MODES:
            raise ValidationError(f"unknown combine mode {self.combine!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("strategy seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class RetrievalResult:
    output: np.ndarray
    matched: int | None
    strategy: Strategy
    clamped_sites: tuple
    orders: tuple

    @property
    def order(self) -> UpdateOrder | None:
        """The update order, or ``None`` for independent runs over several sites."""
        return self.orders[0] if len(self.orders) == 1 else None

    def __eq__(self, other):
        return (
            isinstance(other, RetrievalResult)
            and np.array_equal(self.output, other.output)
            and (self.matched, self.strategy, self.clamped_sites, self.orders)
            == (other.matched, other.strategy, other.clamped_sites, other.orders)
        )


def _grow(t: np.ndarray, order: tuple, clamp: np.ndarray):
    """Run the recursion; return outputs and potentials in original neuron indices."""
    idx = np.asarray(order)
    tp = t[np.ix_(idx, idx)]
    n = len(idx)
    c = len(clamp)
    f = np.empty(n, dtype=np.int64)
    v = np.empty(n, dtype=np.int64)
    f[:c] = clamp
    v[:c] = clamp
    for i in range(c, n):
        v[i] = tp[i, :i] @ f[:i]
        f[i] = 1 if v[i] >= 0 else -1
    out = np.empty(n, dtype=np.int64)
    pot = np.empty(n, dtype=np.int64)
    out[idx] = f
    pot[idx] = v
    return out, pot


def grow_fragment(t: WeightMatrix, order: UpdateOrder, clamp) -> np.ndarray:
    """Grow a fragment from the clamped prefix of ``order`` to a full pattern.

    ``clamp`` holds the spins of ``order.clamped`` in that order.  The result is
    indexed by original neuron number.
    """
    if order.n != t.n:
        raise DimensionError(f"order has length {order.n}, matrix has n={t.n}")
    clamp = as_bipolar(clamp)
    if len(clamp) != order.clamp_count:
        raise DimensionError(f"{len(clamp)} clamp values for {order.clamp_count} clamped neurons")
    out, _ = _grow(t.t, order.order, clamp)
    return as_bipolar(out)


def fragment_potentials(t: WeightMatrix, order: UpdateOrder, clamp) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`grow_fragment` but also return each neuron's pre-threshold potential.

    Clamped neurons report their clamp spin as potential.
    """
    clamp = as_bipolar(clamp)
    if len(clamp) != order.clamp_count or order.n != t.n:
        raise DimensionError("clamp/order/matrix sizes disagree")
    out, pot = _grow(t.t, order.order, clamp)
    return as_bipolar(out), pot


def _check_sites(sites, n) -> tuple:
    sites = tuple(int(s) for s in sites)
    if not sites:
        raise ValidationError("at least one site is required")
    if len(set(sites)) != len(sites):
        raise ValidationError(f"duplicate sites in {sites}")
    for s in sites:
        if not 0 <= s < n:
            raise SiteIndexError(f"site {s} out of range for n={n}")
    return sites


def _aligned(sites, values, n):
    sites = _check_sites(sites, n)
    values = as_bipolar(values)
    if len(values) != len(sites):
        raise DimensionError(f"{len(sites)} sites but {len(values)} clamp values")
    pairs = sorted(zip(sites, values.tolist()))
    return tuple(s for s, _ in pairs), np.array([v for _, v in pairs], dtype=SPIN_DTYPE)


def _match(output, memories):
    return None if memories is None else memories.match(output)


def retrieve_classical(
    t: WeightMatrix,
    prox: ProximityModel,
    site: int,
    value: int,
    memories: MemorySet | None = None,
) -> RetrievalResult:
    order = single_site_order(prox, site)
    output = grow_fragment(t, order, [value])
    return RetrievalResult(
        output, _match(output, memories), Strategy("classical"), (order.order[0],), (order,)
    )


def order_arbitrary(n: int, sites, seed: int = 0) -> UpdateOrder:
    """Sorted sites, then the other neurons in a seeded uniform random order."""
    head = sorted(_check_sites(sites, n))
    rest = np.array([j for j in range(n) if j not in set(head)], dtype=np.int64)
    tail = np.random.default_rng(int(seed)).permutation(rest)
    return UpdateOrder((*head, *tail.tolist()), len(head))


def order_averaged(prox: ProximityModel, sites) -> UpdateOrder:
    """Sorted sites, then the other neurons by mean distance to the sites.

    Ties go to the lower index.  Sums use ``math.fsum`` so equal multisets of
    distances compare equal regardless of summation order.
    """
    head = sorted(_check_sites(sites, prox.n))
    head_set = set(head)
    # one site: compare squared distances exactly like single_site_order
    d = prox.sq_dist if len(head) == 1 else prox.dist
    # same divisor for every neuron, so comparing sums is comparing means
    key = {j: math.fsum(d[s, j] for s in head) for j in range(prox.n) if j not in head_set}
    tail = sorted(key, key=lambda j: (key[j], j))
    return UpdateOrder((*head, *tail), len(head))


def retrieve_multi(
    t: WeightMatrix,
    prox: ProximityModel,
    sites,
    clamp_values,
    strategy: Strategy | str,
    memories: MemorySet | None = None,
) -> RetrievalResult:
    """Clamp several sites at once and grow one fragment (arbitrary or averaged order)."""
    if isinstance(strategy, str):
        strategy = Strategy(strategy)
    if strategy.variant not in ("arbitrary", "averaged"):
        raise ContractError(
            f"retrieve_multi handles arbitrary/averaged, not {strategy.variant!r}"
        )
    sites, values = _aligned(sites, clamp_values, t.n)
    if strategy.variant == "arbitrary":
        order = order_arbitrary(t.n, sites, strategy.seed)
    else:
        order = order_averaged(prox, sites)
    output = grow_fragment(t, order, values)
    return RetrievalResult(output, _match(output, memories), strategy, sites, (order,))


def retrieve_independent(
    t: WeightMatrix,
    prox: ProximityModel,
    sites,
    clamp_values,
    memories: MemorySet | None = None,
    combine: str = "potential",
) -> RetrievalResult:
    """Run one single-site recall per site and combine them.

    With ``combine="potential"`` the integer potentials of every run are summed
    per neuron before one final threshold; ``"vote"`` sums the runs' bipolar
    outputs.  Clamped neurons keep their clamp spins.
    """
    strategy = Strategy("independent", combine=combine)
    sites, values = _aligned(sites, clamp_values, t.n)
    total = np.zeros(t.n, dtype=np.int64)
    orders = []
    # ascending site order keeps the reduction fixed
    for s, v in zip(sites, values):
        order = single_site_order(prox, s)
        out, pot = _grow(t.t, order.order, np.array([v]))
        total += pot if combine == "potential" else out
        orders.append(order)
    output = np.array(sgn(total), dtype=SPIN_DTYPE)
    output[list(sites)] = values
    output = as_bipolar(output)
    return RetrievalResult(output, _match(output, memories), strategy, sites, tuple(orders))


def retrieve(
    t: WeightMatrix,
    prox: ProximityModel,
    sites,
    clamp_values,
    strategy: Strategy | str,
    memories: MemorySet | None = None,
) -> RetrievalResult:
    """Dispatch to the retrieval routine for ``strategy``."""
    if isinstance(strategy, str):
        strategy = Strategy(strategy)
    if strategy.variant == "classical":
        sites = tuple(sites)
        values = list(np.asarray(clamp_values).ravel())
        if len(sites) != 1:
            raise ContractError(f"classical retrieval clamps exactly one site, got {len(sites)}")
        if len(values) != 1:
            raise DimensionError(f"1 site but {len(values)} clamp values")
        return retrieve_classical(t, prox, sites[0], values[0], memories)
    if strategy.variant == "independent":
        return retrieve_independent(t, prox, sites, clamp_values, memories, strategy.combine)
    return retrieve_multi(t, prox, sites, clamp_values, strategy, memories)
