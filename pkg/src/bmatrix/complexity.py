"""Exact operation counts for retrieval sweeps.

A sweep that stimulates every subset of up to ``r`` neurons with every
bipolar fragment costs ``sum_{i=1..r} C(n, i) * 2**i`` recalls.  Restricting
stimulation to a memory's ``r`` active sites replaces ``n`` by ``r``, which
collapses to ``3**r - 1``.  All arithmetic is on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


def binomial(n: int, k: int) -> int:
    """Exact ``n`` choose ``k`` by the multiplicative formula."""
    if n < 0 or k < 0:
        raise DomainError(f"binomial needs non-negative arguments, got ({n}, {k})")
    if k > n:
        raise DomainError(f"binomial({n}, {k}) has k > n")
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


def cost_classical(n: int, r: int) -> int:
    """Recalls needed to try every site subset of size 1..r of an n-neuron net."""
    if r < 1:
        raise DomainError(f"fragment size r must be >= 1, got {r}")
    if r > n:
        raise DomainError(f"fragment size r={r} exceeds network size n={n}")
    return sum(binomial(n, i) * 2**i for i in range(1, r + 1))


def cost_active(r: int) -> int:
    """Recalls needed when only the ``r`` active sites are stimulated."""
    if r < 1:
        raise DomainError(f"fragment size r must be >= 1, got {r}")
    return sum(binomial(r, i) * 2**i for i in range(1, r + 1))


@dataclass(frozen=True)
class CostReport:
    n: int
    r: int
    classical_ops: int
    active_ops: int

    @property
    def ratio(self) -> float:
        return self.classical_ops / self.active_ops


def cost_report(n: int, r: int) -> CostReport:
    return CostReport(n, r, cost_classical(n, r), cost_active(r))
