"""Active-site identification.

For memory ``i`` every neuron ``j`` is scored by how many other memories
disagree with ``M[i]`` at ``j``.  The top ``r`` scorers become the memory's
active sites.  A score of ``m - 1`` means the bit is unique to that memory
(a *strict* site).  Each memory is tagged with a prime activation level
(2, 3, 5, ...) that is used only as a group label.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, islice

import numpy as np

from .core import MemorySet
from .errors import DomainError, SiteIndexError, ValidationError


def primes():
    """Yield 2, 3, 5, 7, ... indefinitely."""
    found = []
    for k in count(2):
        if all(k % p for p in found if p * p <= k):
            found.append(k)
            yield k


def nth_prime(i: int) -> int:
    """Zero-based: ``nth_prime(0) == 2``."""
    if i < 0:
        raise SiteIndexError(f"prime index must be non-negative, got {i}")
    return next(islice(primes(), i, None))


@dataclass(frozen=True)
class SiteEntry:
    level: int
    sites: tuple
    scores: tuple
    strict: tuple

    @property
    def all_strict(self) -> bool:
        return all(self.strict)


@dataclass(frozen=True)
class ActiveSiteMap:
    entries: tuple
    r: int

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> SiteEntry:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def strict_rate(self) -> float:
        """Fraction of memories whose whole site set is strict."""
        return sum(e.all_strict for e in self.entries) / len(self.entries)


def distinctness_scores(memories: MemorySet) -> np.ndarray:
    """``scores[i, j]`` = number of other memories that differ from memory ``i`` at ``j``."""
    p = memories.patterns
    return (p[:, None, :] != p[None, :, :]).sum(axis=1)


def identify_sites(memories: MemorySet, r: int) -> ActiveSiteMap:
    """Pick up to ``r`` active sites per memory, highest distinctness first.

    Ties go to the lower neuron index and zero-score neurons are never picked.
    With a single memory the scores carry no information; every neuron is
    treated as strict and the first ``r`` indices are used.
    """
    if r < 1:
        raise DomainError(f"site budget r must be >= 1, got {r}")
    m, n = memories.m, memories.n
    k = min(r, n)
    levels = list(islice(primes(), m))

    if m == 1:
        sites = tuple(range(k))
        entry = SiteEntry(levels[0], sites, (0,) * k, (True,) * k)
        return ActiveSiteMap((entry,), r)

    scores = distinctness_scores(memories)
    entries = []
    for i in range(m):
        row = scores[i]
        ranked = sorted(range(n), key=lambda j: (-row[j], j))
        chosen = [j for j in ranked[:k] if row[j] > 0]
        if not chosen:
            raise ValidationError(f"memory {i} has no distinct neuron")
        entries.append(
            SiteEntry(
                level=levels[i],
                sites=tuple(chosen),
                scores=tuple(int(row[j]) for j in chosen),
                strict=tuple(bool(row[j] == m - 1) for j in chosen),
            )
        )
    return ActiveSiteMap(tuple(entries), r)


def level_of(site_map: ActiveSiteMap, memory: int) -> int:
    if not 0 <= memory < site_map.m:
        raise SiteIndexError(f"memory {memory} out of range for m={site_map.m}")
    return site_map.entries[memory].level
