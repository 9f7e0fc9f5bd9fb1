"""Seeded Monte-Carlo capacity experiments.

Each trial draws fresh memories and a fresh neuron layout, trains the weight
matrix, finds every memory's active sites, clamps them with the memory's own
bits and checks whether the recalled pattern equals that memory.

Seeds
-----
Trial ``k`` of an experiment with master seed ``s`` uses the 64-bit seed
``trial_seed(s, k)``, obtained from ``numpy.random.SeedSequence((s, k))``.
Within a trial, independent streams are keyed by purpose:

* memories:  ``SeedSequence((trial_seed, 0))``
* layout:    ``SeedSequence((trial_seed, 1, geometry.seed))``
* arbitrary order for memory ``i``: ``SeedSequence((trial_seed, 2, strategy.seed, i))``

None of these depend on the strategy variant, so every strategy sees the same
memories and layout within a trial.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .core import SPIN_DTYPE, MemorySet
from .errors import DomainError, InfeasibleError
from .retrieval import Strategy, retrieve
from .sites import identify_sites
from .training import GeometryKind, build_proximity, train_hebbian

_MEMORIES, _LAYOUT, _ORDER = 0, 1, 2


def _derive(*words) -> int:
    ss = np.random.SeedSequence([int(w) for w in words])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def trial_seed(master_seed: int, trial_index: int) -> int:
    return _derive(master_seed, trial_index)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 12
    m: int = 8
    r: int = 4
    trials: int = 250
    strategy: Strategy = field(default_factory=Strategy)
    geometry: GeometryKind = field(default_factory=GeometryKind)
    master_seed: int = 0
    # clamp every neuron instead of the active sites (sanity baseline)
    full_clamp: bool = False

    def __post_init__(self):
        if isinstance(self.strategy, str):
            object.__setattr__(self, "strategy", Strategy(self.strategy))
        if isinstance(self.geometry, str):
            object.__setattr__(self, "geometry", GeometryKind(self.geometry))
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.m < 2:
            raise DomainError(f"experiments need m >= 2 memories, got {self.m}")
        if self.n < 2:
            raise DomainError(f"need n >= 2 neurons, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise DomainError(f"site budget r={self.r} must lie in 1..n={self.n}")
        if self.m > 2**self.n:
            raise InfeasibleError(f"cannot draw {self.m} distinct patterns of length {self.n}")
        if not 0 <= int(self.master_seed) < 2**64:
            raise DomainError("master seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class TrialOutcome:
    successes: int
    any_matches: int
    strict_memories: int


@dataclass(frozen=True)
class ExperimentStats:
    config: ExperimentConfig
    mean_success: float
    stddev: float
    strict_site_rate: float
    per_trial: tuple
    mean_any_match: float = 0.0


def generate_memories(n: int, m: int, seed: int = 0) -> MemorySet:
    """Draw ``m`` distinct uniform bipolar patterns of length ``n`` by rejection."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if m > 2**n:
        raise InfeasibleError(f"cannot draw {m} distinct patterns of length {n}")
    rng = np.random.default_rng(int(seed))
    seen = set()
    rows = []
    while len(rows) < m:
        x = rng.integers(0, 2, size=n, dtype=np.int8) * 2 - 1
        key = x.tobytes()
        if key not in seen:
            seen.add(key)
            rows.append(x)
    return MemorySet(np.array(rows, dtype=SPIN_DTYPE))


def score_memories(
    memories: MemorySet,
    prox,
    r: int,
    strategy: Strategy,
    order_key: int = 0,
    full_clamp: bool = False,
) -> TrialOutcome:
    """Clamp each memory's active sites with its own bits and count exact recalls.

    ``order_key`` seeds the arbitrary orders (one derived stream per memory).
    With ``full_clamp`` every neuron is clamped instead of the active sites.
    The ``classical`` strategy recalls once per site and credits the memory if
    any single-site recall reproduces it.
    """
    t = train_hebbian(memories)
    site_map = identify_sites(memories, r)
    successes = any_matches = 0
    for i, memory in enumerate(memories):
        sites = tuple(range(memories.n)) if full_clamp else site_map[i].sites
        if strategy.variant == "classical":
            results = [retrieve(t, prox, [s], [memory[s]], strategy, memories) for s in sites]
        else:
            strat_i = strategy
            if strategy.variant == "arbitrary":
                strat_i = replace(strategy, seed=_derive(order_key, _ORDER, strategy.seed, i))
            results = [retrieve(t, prox, sites, memory[list(sites)], strat_i, memories)]
        if any(res.matched == i for res in results):
            successes += 1
        if any(res.matched is not None for res in results):
            any_matches += 1
    strict = sum(e.all_strict for e in site_map)
    return TrialOutcome(successes, any_matches, strict)


def _trial(config: ExperimentConfig, trial_index: int) -> TrialOutcome:
    ts = trial_seed(config.master_seed, trial_index)
    memories = generate_memories(config.n, config.m, _derive(ts, _MEMORIES))
    layout = GeometryKind(config.geometry.variant, _derive(ts, _LAYOUT, config.geometry.seed))
    prox = build_proximity(config.n, layout)
    return score_memories(memories, prox, config.r, config.strategy, ts, config.full_clamp)


def run_trial(config: ExperimentConfig, trial_index: int) -> int:
    """Number of memories recalled exactly from their own active sites (0..m)."""
    return _trial(config, trial_index).successes


def run_experiment(config: ExperimentConfig) -> ExperimentStats:
    outcomes = [_trial(config, k) for k in range(config.trials)]
    counts = np.array([o.successes for o in outcomes], dtype=np.float64)
    return ExperimentStats(
        config=config,
        mean_success=float(counts.mean()),
        stddev=float(counts.std()),
        strict_site_rate=sum(o.strict_memories for o in outcomes) / (config.m * config.trials),
        per_trial=tuple(o.successes for o in outcomes),
        mean_any_match=float(np.mean([o.any_matches for o in outcomes])),
    )


def run_sweep(
    base: ExperimentConfig,
    n_values: Sequence[int],
    strategies: Sequence[Strategy | str],
    m_values: Sequence[int] | None = None,
) -> list[ExperimentStats]:
    """Run every (strategy, m, n) cell with the base config's master seed.

    Rows come out grouped by strategy, then m, then n.
    """
    if not n_values or not strategies:
        raise DomainError("sweep needs at least one n value and one strategy")
    m_values = [base.m] if m_values is None else list(m_values)
    rows = []
    for s in strategies:
        if isinstance(s, str):
            s = replace(base.strategy, variant=s)
        for m in m_values:
            for n in n_values:
                rows.append(run_experiment(replace(base, n=n, m=m, strategy=s)))
    return rows
