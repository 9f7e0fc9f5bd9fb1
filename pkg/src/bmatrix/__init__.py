"""B-matrix associative memory with active-site stimulation.

Hebbian training, proximity-ordered fragment growth, three multi-site
retrieval strategies, exact sweep-cost accounting and a seeded Monte-Carlo
capacity harness.
"""

__version__ = "0.1.0"

from .complexity import CostReport, binomial, cost_active, cost_classical, cost_report
from .core import (
    MemorySet,
    ProximityModel,
    UpdateOrder,
    WeightMatrix,
    as_bipolar,
    hamming,
    permute_matrix,
    sgn,
)
from .errors import (
    BMatrixError,
    ContractError,
    DimensionError,
    DomainError,
    InfeasibleError,
    ParseError,
    PermutationError,
    SiteIndexError,
    ValidationError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentStats,
    generate_memories,
    run_experiment,
    run_sweep,
    run_trial,
    score_memories,
    trial_seed,
)
from .retrieval import (
    RetrievalResult,
    Strategy,
    fragment_potentials,
    grow_fragment,
    order_arbitrary,
    order_averaged,
    retrieve,
    retrieve_classical,
    retrieve_independent,
    retrieve_multi,
)
from .sites import ActiveSiteMap, SiteEntry, identify_sites, level_of, nth_prime
from .training import GeometryKind, build_proximity, single_site_order, train_hebbian
