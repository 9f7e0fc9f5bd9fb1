"""Domain types and shared primitives.

Patterns are bipolar: every neuron holds -1 or +1.  Arrays handed out by the
types below are marked read-only so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionError, PermutationError, ValidationError

SPIN_DTYPE = np.int8
WEIGHT_DTYPE = np.int64


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def sgn(x):
    """Signum with the tie rule ``sgn(0) = +1``.

    Works elementwise on arrays; returns a plain ``int`` for scalars.
    """
    if np.ndim(x) == 0:
        return 1 if x >= 0 else -1
    return np.where(np.asarray(x) >= 0, 1, -1).astype(SPIN_DTYPE)


def as_bipolar(values, n: int | None = None) -> np.ndarray:
    """Validate ``values`` as a bipolar vector and return it as a read-only int8 array."""
    a = np.asarray(values)
    if a.ndim != 1:
        raise DimensionError(f"expected a 1-D pattern, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise DimensionError(f"pattern has length {a.shape[0]}, expected {n}")
    if not np.all((a == 1) | (a == -1)):
        raise ValidationError("pattern entries must be -1 or +1")
    return _frozen(a.astype(SPIN_DTYPE))


def hamming(a, b) -> int:
    """Number of positions at which two patterns differ."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


@dataclass(frozen=True, eq=False)
class MemorySet:
    """``m`` pairwise-distinct bipolar patterns of common length ``n``.

    ``patterns`` has shape ``(m, n)``.
    """

    patterns: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.patterns)
        if p.ndim != 2:
            raise DimensionError(f"memory set must be 2-D, got shape {p.shape}")
        m, n = p.shape
        if m < 1:
            raise ValidationError("memory set needs at least one memory")
        if n < 2:
            raise ValidationError("memories need at least two neurons")
        if not np.all((p == 1) | (p == -1)):
            raise ValidationError("memory entries must be -1 or +1")
        p = p.astype(SPIN_DTYPE)
        if len({row.tobytes() for row in p}) != m:
            raise ValidationError("memories must be pairwise distinct (hamming distance >= 1)")
        object.__setattr__(self, "patterns", _frozen(p))

    @property
    def m(self) -> int:
        return self.patterns.shape[0]

    @property
    def n(self) -> int:
        return self.patterns.shape[1]

    def __len__(self):
        return self.m

    def __getitem__(self, i):
        return self.patterns[i]

    def __iter__(self):
        return iter(self.patterns)

    def __eq__(self, other):
        return isinstance(other, MemorySet) and np.array_equal(self.patterns, other.patterns)

    def match(self, pattern) -> int | None:
        """Index of the stored memory equal to ``pattern``, or ``None``."""
        hits = np.flatnonzero(np.all(self.patterns == np.asarray(pattern), axis=1))
        return int(hits[0]) if hits.size else None


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric, zero-diagonal integer weight matrix ``t``."""

    t: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise DimensionError(f"weight matrix must be square, got shape {t.shape}")
        if not np.issubdtype(t.dtype, np.integer):
            if not np.array_equal(t, np.round(t)):
                raise ValidationError("weights must be integers")
        t = t.astype(WEIGHT_DTYPE)
        if not np.array_equal(t, t.T):
            raise ValidationError("weight matrix must be symmetric")
        if np.any(np.diag(t) != 0):
            raise ValidationError("weight matrix must have a zero diagonal")
        object.__setattr__(self, "t", _frozen(t))

    @property
    def n(self) -> int:
        return self.t.shape[0]

    @property
    def b(self) -> np.ndarray:
        """Strict lower triangle; ``t == b + b.T``."""
        return np.tril(self.t, k=-1)

    def __eq__(self, other):
        return isinstance(other, WeightMatrix) and np.array_equal(self.t, other.t)


@dataclass(frozen=True, eq=False)
class ProximityModel:
    """Neuron positions and their pairwise Euclidean distances.

    ``sq_dist`` holds squared distances and is what orderings compare; for
    integer lattices these values are exact integers.
    """

    positions: np.ndarray
    sq_dist: np.ndarray = field(init=False, repr=False)
    dist: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        if pos.ndim != 2 or pos.shape[1] not in (2, 3):
            raise DimensionError(f"positions must have shape (n, 2) or (n, 3), got {pos.shape}")
        if pos.shape[0] < 2:
            raise ValidationError("need at least two neurons")
        diff = pos[:, None, :] - pos[None, :, :]
        sq = np.einsum("ijk,ijk->ij", diff, diff)
        object.__setattr__(self, "positions", _frozen(pos))
        object.__setattr__(self, "sq_dist", _frozen(sq))
        object.__setattr__(self, "dist", _frozen(np.sqrt(sq)))

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]


@dataclass(frozen=True)
class UpdateOrder:
    """A neuron permutation whose first ``clamp_count`` entries are clamped."""

    order: tuple
    clamp_count: int

    def __post_init__(self):
        order = tuple(int(i) for i in self.order)
        n = len(order)
        if sorted(order) != list(range(n)):
            raise PermutationError(f"not a permutation of 0..{n - 1}: {order}")
        if not 1 <= self.clamp_count <= n:
            raise ValidationError(f"clamp_count must lie in 1..{n}, got {self.clamp_count}")
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def clamped(self) -> tuple:
        return self.order[: self.clamp_count]

    def inverse(self) -> tuple:
        inv = [0] * self.n
        for pos, idx in enumerate(self.order):
            inv[idx] = pos
        return tuple(inv)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.order)


def _as_order(order) -> tuple:
    if isinstance(order, UpdateOrder):
        return order.order
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(len(order))):
        raise PermutationError(f"not a permutation of 0..{len(order) - 1}: {order}")
    return order


def permute_matrix(t: WeightMatrix, order: UpdateOrder | Sequence[int]) -> WeightMatrix:
    """Reorder rows and columns so that ``t'[i][j] = t[order[i]][order[j]]``."""
    idx = _as_order(order)
    if len(idx) != t.n:
        raise PermutationError(f"order has length {len(idx)}, matrix has n={t.n}")
    idx = np.asarray(idx)
    return WeightMatrix(t.t[np.ix_(idx, idx)])
